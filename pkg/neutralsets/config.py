"""
Configuration settings for the neutral sets toolkit.
"""

import os
import logging


def _int_or_none(name):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else None


class Config:
    """Base configuration"""
    # Language settings
    DEFAULT_HORIZON = int(os.environ.get('DEFAULT_HORIZON', 12))
    CLASSIFY_BOUND = _int_or_none('CLASSIFY_BOUND')  # None means horizon - 2

    # Verifier bounds
    CONNECTION_BOUND = int(os.environ.get('CONNECTION_BOUND', 64))
    DECODE_LENGTH = _int_or_none('DECODE_LENGTH')  # None means horizon // max_len(X)
    RECURRENCE_BOUND = int(os.environ.get('RECURRENCE_BOUND', 6))
    RADIUS_WORD_LENGTH = int(os.environ.get('RADIUS_WORD_LENGTH', 3))
    LEMMA_BOUND = int(os.environ.get('LEMMA_BOUND', 4))
    UNIFORM_CODE_LENGTHS = int(os.environ.get('UNIFORM_CODE_LENGTHS', 4))
    DECODING_LETTERS = os.environ.get('DECODING_LETTERS') or None

    # Report settings
    REPORT_FORMAT = os.environ.get('REPORT_FORMAT') or 'json'
    OUTPUT_FOLDER = os.environ.get('OUTPUT_FOLDER') or None

    # Logging settings
    LOG_LEVEL = logging.INFO
    LOG_FILE = os.environ.get('LOG_FILE') or None

    @staticmethod
    def init_app(app):
        """Initialize the app with this configuration"""
        pass


class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = logging.DEBUG


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_FILE = None
    OUTPUT_FOLDER = None


class ProductionConfig(Config):
    """Production configuration"""
    LOG_LEVEL = logging.WARNING
    LOG_FILE = None
    ROTATING_LOG_FILE = os.environ.get('LOG_FILE') or 'neutralsets.log'

    @classmethod
    def init_app(cls, app):
        Config.init_app(app)

        from logging.handlers import RotatingFileHandler

        # Rotating file handler in production
        file_handler = RotatingFileHandler(
            cls.ROTATING_LOG_FILE, maxBytes=10485760, backupCount=10
        )
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
        ))
        file_handler.setLevel(logging.INFO)
        app.logger.addHandler(file_handler)


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}
