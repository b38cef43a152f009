"""Entry point for ``python -m core.cli <action> ...``; same as ``manage.py dyer``."""
import os
import sys


def run(argv=None) -> int:
    """Run the ``dyer`` command on ``argv`` and return its exit code."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'dyergrowth.settings')
    from django.core.management import execute_from_command_line

    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        execute_from_command_line(['manage.py', 'dyer', *argv])
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0


if __name__ == '__main__':
    sys.exit(run())
