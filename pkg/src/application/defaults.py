from os import getenv

import dotenv

# a .env file in the working directory may supply any of the variables below
dotenv.load_dotenv()

DEFAULT_BUDGET = int(getenv("LATTICE_BUDGET", "10000000"))
DEFAULT_SCAN_RADIUS = int(getenv("LATTICE_SCAN_RADIUS", "2"))
DEFAULT_HEURISTIC = getenv("LATTICE_HEURISTIC", "nearest")
DEFAULT_THREADS = int(getenv("LATTICE_THREADS", "1"))
DEFAULT_REPORT = getenv("LATTICE_REPORT", "text")
DEFAULT_CERT_DIR = getenv("LATTICE_CERT_DIR")
DEFAULT_METRICS_FILE = getenv("LATTICE_METRICS_FILE")
DEFAULT_MAX_NORM_SQ = 25
DEFAULT_OTEL_ENDPOINT = getenv("OTEL_EXPORTER_OTLP_ENDPOINT")
DEFAULT_DISABLE_OTEL = getenv("DISABLE_OTEL", '0') == '1'
