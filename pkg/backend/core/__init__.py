"""
Core Package
============

Contains cross-cutting infrastructure used by every other package.

Modules:
- config.py: Process settings (pydantic-settings)
- exceptions.py: Exception hierarchy rooted at RerouteError
- logging.py: Logging configuration

WHY THIS PACKAGE EXISTS:
- Centralizes configuration that spans multiple modules
- Provides consistent error handling patterns
- Ensures uniform logging across the application
"""
