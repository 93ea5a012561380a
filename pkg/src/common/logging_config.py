# logging conf of the cli and the sweep workers
import logging
import os
import sys

from dotenv import load_dotenv

# load environment variables from .env file
load_dotenv()


def setup_logging(service_name: str = "cyclotomic") -> logging.Logger:
    # stdout is reserved for csv/json reports, so everything goes to stderr
    log_level = os.getenv("LOG_LEVEL", "INFO").upper()
    numeric_level = getattr(logging, log_level, logging.INFO)

    logging.basicConfig(
        level=numeric_level,
        format=f"%(asctime)s - [{service_name}] - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )
    return logging.getLogger(service_name)
