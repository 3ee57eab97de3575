"""
Configuration for ces-kit
Loads ces_config.json, falls back to built-in defaults and applies
CES_KIT_* environment overrides (a .env file is honoured)
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger("ces-kit-config")

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "ces_config.json"


class ServerSettings(BaseModel):
    """Tool server identity"""
    name: str = Field(default="ces-kit-mcp", description="Server name")
    version: str = Field(default="1.0.0", description="Server version")
    description: str = Field(default="", description="Human readable description")


class Limits(BaseModel):
    """Desk-scale limits for dense storage"""
    max_dimension: int = Field(default=4096, ge=4, description="Largest allowed D = prod d_j")


class Tolerances(BaseModel):
    """Numerical tolerances used across modules"""
    hermitian: float = Field(default=1e-10, gt=0, description="Entrywise |A - A^dag| bound")
    unit_norm: float = Field(default=1e-10, gt=0, description="| ||v|| - 1 | bound for unit vectors")
    basis: float = Field(default=1e-10, gt=0, description="Orthonormality and T-residual bound for bases")
    verdict: float = Field(default=1e-8, gt=0, description="Negativity threshold for NPT verdicts")
    range: float = Field(default=1e-9, gt=0, description="Residual bound for 'range inside S' checks")
    psd: float = Field(default=1e-9, gt=0, description="Smallest eigenvalue allowed below zero for PSD inputs")
    upb_certificate: float = Field(default=1e-3, gt=0, description="Unextendability certified when seesaw value <= 1 - this")
    complete_entanglement: float = Field(default=1e-4, gt=0, description="Complete entanglement certified when seesaw value <= 1 - this")


class EigensolverSettings(BaseModel):
    """Hermitian eigensolver configuration"""
    method: Literal["jacobi", "numpy"] = Field(default="jacobi", description="Cyclic Jacobi or LAPACK via numpy")
    threshold: float = Field(default=1e-13, gt=0, description="Off-diagonal convergence threshold")
    max_sweeps: int = Field(default=100, ge=1, description="Maximum Jacobi sweeps")


class SeesawSettings(BaseModel):
    """Alternating product-state optimisation defaults"""
    restarts: int = Field(default=50, ge=1)
    iterations: int = Field(default=200, ge=1)
    gain_tolerance: float = Field(default=1e-12, gt=0)


class LoggingSettings(BaseModel):
    level: str = Field(default="INFO")
    format: str = Field(default="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    json_output: bool = Field(default=False, alias="json")

    model_config = {"populate_by_name": True}


class ReportSettings(BaseModel):
    schema_tag: str = Field(default="ces-kit/1", alias="schema")
    float_digits: int = Field(default=17, ge=1, le=17)

    model_config = {"populate_by_name": True}


class Settings(BaseModel):
    """Complete ces-kit settings"""
    server: ServerSettings = Field(default_factory=ServerSettings)
    limits: Limits = Field(default_factory=Limits)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    eigensolver: EigensolverSettings = Field(default_factory=EigensolverSettings)
    seesaw: SeesawSettings = Field(default_factory=SeesawSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    report: ReportSettings = Field(default_factory=ReportSettings)
    seed: Optional[int] = Field(default=None, description="Seed fallback from CES_KIT_SEED")


def _load_config_file(config_path: Path) -> Dict[str, Any]:
    """Read the JSON config, returning {} when it is missing or broken"""
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        logger.warning(f"Config file not found: {config_path}. Using defaults.")
        return {}
    except Exception as e:
        logger.error(f"Error loading config: {e}. Using defaults.")
        return {}


def _apply_env_overrides(raw: Dict[str, Any]) -> Dict[str, Any]:
    seed = os.getenv("CES_KIT_SEED")
    if seed not in (None, ""):
        try:
            raw["seed"] = int(seed)
        except ValueError:
            logger.warning(f"Ignoring non-integer CES_KIT_SEED={seed!r}")
    level = os.getenv("CES_KIT_LOG_LEVEL")
    if level:
        raw.setdefault("logging", {})["level"] = level.upper()
    log_json = os.getenv("CES_KIT_LOG_JSON")
    if log_json:
        raw.setdefault("logging", {})["json"] = log_json.strip().lower() in ("1", "true", "yes")
    solver = os.getenv("CES_KIT_EIGENSOLVER")
    if solver:
        raw.setdefault("eigensolver", {})["method"] = solver.strip().lower()
    return raw


def load_settings(config_path: Optional[str] = None) -> Settings:
    """Load settings from file + environment"""
    load_dotenv()
    path = Path(config_path) if config_path else Path(os.getenv("CES_KIT_CONFIG", DEFAULT_CONFIG_PATH))
    raw = _apply_env_overrides(_load_config_file(path))
    return Settings.model_validate(raw)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded on first use"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings
