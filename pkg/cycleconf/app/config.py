import os

from dotenv import load_dotenv

load_dotenv()

OUTPUT_FORMAT = os.getenv("CYCLECONF_OUTPUT", "text")
LOG_LEVEL = os.getenv("CYCLECONF_LOG_LEVEL", "WARNING")
JOBS = int(os.getenv("CYCLECONF_JOBS", "1"))

PFAFFIAN_MAX_DIMENSION = int(os.getenv("CYCLECONF_PFAFFIAN_MAX_DIMENSION", "22"))

CENSUS_MAX_BIPARTITE = int(os.getenv("CYCLECONF_CENSUS_MAX_BIPARTITE", "12"))
CENSUS_MAX_CUBIC = int(os.getenv("CYCLECONF_CENSUS_MAX_CUBIC", "14"))
CENSUS_MAX_GENERAL = int(os.getenv("CYCLECONF_CENSUS_MAX_GENERAL", "8"))
