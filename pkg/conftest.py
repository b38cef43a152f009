import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'dyergrowth.settings')
django.setup()
