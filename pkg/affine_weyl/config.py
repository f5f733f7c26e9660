"""
Configuration module for affine-weyl.
Handles environment variables and run defaults.
"""

from typing import List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from AFFINE_WEYL_* environment variables or .env."""

    model_config = SettingsConfigDict(
        env_prefix="AFFINE_WEYL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Runtime
    environment: str = Field(
        default="development",
        description="Environment mode (development, staging, production)",
    )
    debug: bool = Field(default=False, description="Enable debug mode")
    log_level: str = Field(default="INFO", description="Logging level")

    # Search defaults
    default_window: int = Field(default=2, description="Label bound L when none is given")
    default_seed: int = Field(default=7, description="Seed for sampled suites")
    max_nodes: int = Field(
        default=200_000, description="Vertex cap for window enumeration and BFS"
    )
    max_seconds: float = Field(default=300.0, description="Wall-clock cap per search")
    sample_pairs: int = Field(
        default=200, description="Random pairs per class in the diameter suite"
    )
    sample_members: int = Field(
        default=500, description="Random members per class in the constructive suite"
    )
    max_window_slack: Optional[int] = Field(
        default=None,
        description="Extra labels allowed above the start window; defaults to the bound",
    )
    verify_jobs: int = Field(default=1, description="Worker processes for verify suites")

    # CORS Configuration
    allowed_origins: List[str] = Field(
        default=["*"], description="List of allowed CORS origins"
    )

    # API Metadata
    api_title: str = "Affine Weyl Involutions"
    api_description: str = (
        "Conjugacy classes and commuting involution graphs in classical affine Weyl groups"
    )
    api_version: str = "1.0.0"

    @property
    def is_production(self) -> bool:
        return self.environment.lower() == "production"


# Global settings instance
settings = Settings()
