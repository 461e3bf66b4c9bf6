from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # Куда пишутся датасеты, модели и отчеты
    OUTPUT_DIR: str = "output"
    LOG_LEVEL: str = "info"


settings = Settings()
