"""
Application factory that initializes and configures the toolkit.
"""

import logging

from neutralsets.config import config

__version__ = '1.0.0'


class Application:
    """Configured command-line application.

    ``config`` holds the upper-case settings of the chosen configuration
    class, the same way a dictionary-backed app config does.
    """

    def __init__(self, name):
        self.name = name
        self.config = {}
        self.logger = logging.getLogger(name)

    def from_object(self, obj):
        for key in dir(obj):
            if key.isupper():
                self.config[key] = getattr(obj, key)

    def run(self, argv=None):
        from neutralsets.commands import run
        return run(self, argv)


def create_app(config_name='default'):
    """
    Create and configure the application.

    Args:
        config_name (str): Configuration name ('development', 'production', 'testing')

    Returns:
        Application: Configured application
    """
    if config_name not in config:
        raise KeyError(f"Unknown configuration {config_name!r}; choose from {sorted(config)}")
    app = Application(__name__)

    # Load configuration
    app.from_object(config[config_name])
    config[config_name].init_app(app)

    # Configure logging
    setup_logging(app)

    app.logger.debug(f"Initialized app with {config_name} configuration")
    return app


def setup_logging(app):
    """Configure application logging"""
    log_level = app.config.get('LOG_LEVEL', logging.INFO)

    # Configure root logger
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler()
        ]
    )

    # Configure file handler if log file specified
    log_file = app.config.get('LOG_FILE')
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        ))
        logging.getLogger().addHandler(file_handler)
