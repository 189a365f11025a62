"""Configuration management for the residua verifier."""

import os
from pathlib import Path
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings(BaseSettings):
    """Application settings."""

    # Logging
    LOG_LEVEL: str = os.getenv("RESIDUA_LOG_LEVEL", "WARNING")
    LOG_JSON: bool = os.getenv("RESIDUA_LOG_JSON", "false").lower() == "true"

    # Carrier caps (exceeding any of them is an error, never a silent sample)
    MAX_CARRIER: int = int(os.getenv("RESIDUA_MAX_CARRIER", "64"))
    PAIR_CAP: int = int(os.getenv("RESIDUA_PAIR_CAP", "20"))
    TRIPLE_CAP: int = int(os.getenv("RESIDUA_TRIPLE_CAP", "8"))

    # Enumeration
    ENUM_SIZE_CAP: int = 7
    RAW_ENUM_SIZE_CAP: int = 4

    # Workers
    THREADS: int = int(os.getenv("RESIDUA_THREADS", "1"))
    SHOW_PROGRESS: bool = os.getenv("RESIDUA_SHOW_PROGRESS", "false").lower() == "true"

    # Paths
    BASE_DIR: Path = Path(__file__).parent.parent
    FIXTURES_DIR: Path = BASE_DIR / "fixtures"

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


# Global settings instance
settings = Settings()
