#!/usr/bin/env python3
"""
Entry point for the neutral sets command-line toolkit.
Loads configuration, initializes the app, and runs one command.
"""

import os
import sys

from dotenv import load_dotenv

# Load environment variables from .env file before settings are read
load_dotenv()

from neutralsets import create_app  # noqa: E402

if __name__ == '__main__':
    # Configure app based on environment variables
    config_name = os.getenv('NEUTRALSETS_CONFIG', 'development')
    app = create_app(config_name)
    sys.exit(app.run(sys.argv[1:]))
