"""
Configuration for schemanet.

Loads settings from environment variables with sensible defaults.
"""

import os
from dotenv import load_dotenv

# Load .env file if present
load_dotenv()


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


# Property-test generator
SEED = int(os.getenv("SCHEMANET_SEED", "0"))
PROPERTY_TRIALS = int(os.getenv("SCHEMANET_PROPERTY_TRIALS", "1000"))

# Inference settings
ORACLE_MAX_NODES = int(os.getenv("SCHEMANET_ORACLE_MAX_NODES", "25"))
TOLERANCE = float(os.getenv("SCHEMANET_TOLERANCE", "1e-9"))
IMPOSSIBLE_EVIDENCE_THRESHOLD = float(os.getenv("SCHEMANET_IMPOSSIBLE_EVIDENCE", "1e-12"))
PRUNE_BARREN = _env_bool("SCHEMANET_PRUNE_BARREN", True)

# Logging
LOG_LEVEL = os.getenv("SCHEMANET_LOG_LEVEL", "WARNING").upper()

# HTTP API
API_HOST = os.getenv("SCHEMANET_API_HOST", "127.0.0.1")
API_PORT = int(os.getenv("SCHEMANET_API_PORT", "8004"))
