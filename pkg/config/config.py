from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=[
            'config/settings.env',  # env file for general settings of the codebase
            '.env',  # local overrides
        ],
        env_file_encoding='utf-8',
        env_prefix='SYMLAM_',
        extra='ignore',
    )
    log_dir: str = 'log'
    log_level: str = 'INFO'
    console_log_level: str = 'WARNING'
    jobs: int = 1
    show_progress: bool = False


config = Config()
