from fastapi import APIRouter, Depends
from typing import List

from app import schemas, services
from app.core.fibration import FibrationConfig
from app.core.scenarios import builtin_scenarios, verify_scenario
from app.dependencies import get_scenario_config

router = APIRouter(prefix="/scenarios", tags=["scenarios"])


@router.get("/", response_model=List[schemas.ScenarioSummary])
def list_scenarios():
    return [services.scenario_summary(c) for c in builtin_scenarios().values()]


@router.get("/{name}", response_model=schemas.ScenarioSummary)
def get_scenario(config: FibrationConfig = Depends(get_scenario_config)):
    return services.scenario_summary(config)


@router.get("/{name}/verify", response_model=schemas.Report)
def verify(config: FibrationConfig = Depends(get_scenario_config)):
    """Run the lattice checks of a registered fibration"""
    return verify_scenario(config.name)
