"""
Configuration settings for the Admissible Poisson Toolkit.
"""

import os

# Application information
APP_NAME = "Admissible Poisson Toolkit"
APP_DESCRIPTION = "Exact computations with admissible Poisson algebras"
LOGGER_NAME = "paalg"

# Randomness
DEFAULT_SEED = int(os.getenv('PAALG_SEED', '20240101'))
RANDOM_NUMERATOR_RANGE = 9  # numerators drawn from [-9, 9]
RANDOM_DENOMINATOR_RANGE = 9  # denominators drawn from [1, 9]

# Identity checks
DEFAULT_POWER_DEGREE = 8
DEFAULT_POWER_TRIALS = 200
DEFAULT_IDENTITIES = ['admissible', 'flexible', 'eq6', 'sigma3', 'power_associative']

# Structure theory
IDEMPOTENT_SEARCH_BUDGET = 5000  # grid points tried per search
IDEMPOTENT_GRID = ('0', '1', '-1', '1/2', '-1/2')
NIL_TRIALS = 25
SIMPLICITY_TRIALS = 10
OPERATOR_RELATION_TRIALS = 10

# Deformations
DEFAULT_DEFORMATION_ORDER = 4

# Symmetric algebras
DEFAULT_TRUNCATION = 2
SYMALG_VALIDATE_LIMIT = 15  # monomials; larger pairs skip dense validation

# Catalog
SAMPLE_PARAMETERS = ('-2', '-1', '0', '1/2', '1', '3')
AUDIT_POWER_TRIALS = 20  # random elements per fixture in catalog audits

# Export settings
SUPPORTED_EXPORT_FORMATS = ['CSV', 'JSON', 'TXT']
DEFAULT_EXPORT_FORMAT = 'JSON'
JSON_INDENT = 2

# Development settings
DEBUG_MODE = os.getenv('PAALG_DEBUG', 'False').lower() == 'true'
LOG_FILE = os.getenv('PAALG_LOG_FILE') or None
