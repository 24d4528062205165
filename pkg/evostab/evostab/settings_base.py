"""
Django settings for evostab project.

Generated by 'django-admin startproject' using Django 2.0 and trimmed down to
what the command-line toolkit needs: no web front-end is served.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os

from shared.util import positive_int_setting

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Application definition -- these are Python packages which provide models,
# management commands, or serializers used by Django

INSTALLED_APPS = [
    'evolution.apps.EvolutionConfig',
    'dynamics.apps.DynamicsConfig',
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Serializers for the game and report wire formats
    'rest_framework',
]

# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        # Looks like: [12/Apr/2018 14:44:42] evolution INFO mymessage
        # This is similar to django's log formatting
        'simple': {
            'format': '[%(asctime)s] %(name)s %(levelname)s %(message)s',
            'datefmt': '%d/%b/%Y %H:%M:%S'
        },
    },
    'handlers': {
        # StreamHandler writes to stderr; stdout is reserved for reports
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'evolution': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'INFO'),
        },
        'dynamics': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'INFO'),
        },
    },
}

# Version written into every analysis report
EVOSTAB_VERSION = '1.0.0'

# Caps the worker threads used by the pure-strategy sweep and oracle batches
EVOSTAB_THREADS = positive_int_setting('EVOSTAB_THREADS',
                                       os.getenv('EVOSTAB_THREADS'))

# Certified-grid schedule for ESS on boundary best-response cones
ESS_GRID_DENOMINATORS = (2, 4, 8, 16, 32, 64)

# Oracle escalation schedule
ORACLE_DENOMINATORS = (2, 4, 6, 8)
ORACLE_MUTATION_COUNTS = (2, 3)
ORACLE_EPS = ('1/1000', '1/100', '1/10')
ORACLE_BATCH_SIZE = 512

# Replicator dynamics defaults
DYNAMICS_DT = 0.01
DYNAMICS_T_END = 200.0
DYNAMICS_STRIDE = 10
DYNAMICS_TOL = 1e-4
