"""
Django settings for the dyergrowth project.

There is no web surface and no database: the project is a set of apps driven
through the ``dyer`` management command and the Django test runner.
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only needed because Django insists on one; nothing here is signed.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'dyergrowth-insecure-local-key')

DEBUG = os.environ.get('DJANGO_DEBUG', '') == '1'

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'rest_framework',
    'core',
    'graphs',
    'words',
    'series',
    'analysis',
]

# No ORM tables: every value type is an immutable dataclass.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Computation budgets and tolerances
DYER_CLOSURE_BUDGET = int(os.environ.get('DYER_CLOSURE_BUDGET', 1_000_000))
DYER_BALL_BUDGET = int(os.environ.get('DYER_BALL_BUDGET', 1_000_000))
DYER_RANK_CAP = int(os.environ.get('DYER_RANK_CAP', 14))
DYER_TOLERANCE = os.environ.get('DYER_TOLERANCE', '1e-10')
DYER_RATIO_CHECK_DEGREE = int(os.environ.get('DYER_RATIO_CHECK_DEGREE', 40))
DYER_RATIO_SLACK = os.environ.get('DYER_RATIO_SLACK', '0.1')
DYER_ROOT_CAP = int(os.environ.get('DYER_ROOT_CAP', 2000))

# Logging: diagnostics go to stderr, stdout is reserved for command payloads.
DYER_LOG_LEVEL = os.environ.get('DYER_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': DYER_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'graphs', 'words', 'series', 'analysis')
    },
}
