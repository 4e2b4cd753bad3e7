from pydantic_settings import BaseSettings
from decouple import config


class Settings(BaseSettings):
    # App
    app_name: str = "Period Degree Calculator"
    app_version: str = "0.1.0"
    log_level: str = config("PERIODS_LOG_LEVEL", default="WARNING")

    # Monte Carlo
    default_samples: int = config("PERIODS_DEFAULT_SAMPLES", default=4_000_000, cast=int)
    default_seed: int = config("PERIODS_DEFAULT_SEED", default=0, cast=int)
    min_samples: int = 1_000
    batch_size: int = config("PERIODS_BATCH_SIZE", default=65_536, cast=int)
    workers: int = config("PERIODS_WORKERS", default=1, cast=int)
    box_check_samples: int = config("PERIODS_BOX_CHECK_SAMPLES", default=10_000, cast=int)
    verify_samples: int = config("PERIODS_VERIFY_SAMPLES", default=200_000, cast=int)

    # Zeta
    zeta_terms: int = config("PERIODS_ZETA_TERMS", default=32, cast=int)

    # Rational integration
    quad_tolerance: float = config("PERIODS_QUAD_TOLERANCE", default=1e-10, cast=float)
    closed_form_tolerance: float = config("PERIODS_CLOSED_FORM_TOLERANCE", default=1e-9, cast=float)
    quad_subdivision_limit: int = config("PERIODS_QUAD_SUBDIVISION_LIMIT", default=500, cast=int)

    # Exact arithmetic
    bernoulli_max_index: int = 64

    # Witnesses
    max_witness_dim: int = config("PERIODS_MAX_WITNESS_DIM", default=64, cast=int)

    class Config:
        case_sensitive = False


settings = Settings()
