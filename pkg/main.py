import logging

from config.settings import settings
from cli.commands import run

# Настройка логгера
logging.basicConfig(
    level=settings.LOG_LEVEL.upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)

if __name__ == "__main__":
    raise SystemExit(run())
