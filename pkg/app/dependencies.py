from fastapi import HTTPException, Query, status

from app.core.exceptions import InputError
from app.core.fibration import FibrationConfig
from app.core.scenarios import get_scenario


def get_scenario_config(name: str) -> FibrationConfig:
    try:
        return get_scenario(name)
    except InputError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=e.detail)


def delta_param(delta: int = Query(..., ge=1, le=10**6)) -> int:
    return delta
