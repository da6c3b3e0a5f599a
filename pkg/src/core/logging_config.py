"""
Logging configuration for the Groebner selection-strategy toolkit.
Sets up structured logging with different levels and handlers.
"""

import functools
import logging
import logging.handlers
import os
import time
from pathlib import Path

from .constants import LoggingConstants, EnvironmentConstants


def setup_logging(
    log_level: str = None,
    log_dir: str = "logs",
    enable_console: bool = True,
    enable_file: bool = None,
) -> logging.Logger:
    """
    Set up logging configuration for the application.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory to store log files
        enable_console: Whether to enable console logging
        enable_file: Whether to enable file logging (defaults to the
            GROEBNER_RL_LOG_TO_FILE environment variable)

    Returns:
        Configured logger instance
    """
    if log_level is None:
        log_level = os.getenv(EnvironmentConstants.LOG_LEVEL, LoggingConstants.WARNING)
    if enable_file is None:
        enable_file = os.getenv(EnvironmentConstants.LOG_TO_FILE, "false").lower() == "true"

    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    if enable_file:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    root_logger.handlers.clear()

    detailed_formatter = logging.Formatter(LoggingConstants.DETAILED_FORMAT)
    simple_formatter = logging.Formatter(LoggingConstants.SIMPLE_FORMAT)

    # Console logs go to stderr
    if enable_console:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(numeric_level)
        console_handler.setFormatter(simple_formatter)
        root_logger.addHandler(console_handler)

    if enable_file:
        main_log_file = log_path / LoggingConstants.MAIN_LOG_FILE
        file_handler = logging.handlers.RotatingFileHandler(
            main_log_file,
            maxBytes=LoggingConstants.MAX_LOG_SIZE,
            backupCount=LoggingConstants.BACKUP_COUNT,
        )
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(file_handler)

        # Only ERROR and CRITICAL
        error_log_file = log_path / LoggingConstants.ERROR_LOG_FILE
        error_handler = logging.handlers.RotatingFileHandler(
            error_log_file,
            maxBytes=LoggingConstants.MAX_LOG_SIZE,
            backupCount=LoggingConstants.BACKUP_COUNT,
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(error_handler)

    return logging.getLogger(LoggingConstants.MAIN_LOGGER)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a specific module.

    Args:
        name: Logger name (usually module name)

    Returns:
        Logger instance
    """
    return logging.getLogger(f"{LoggingConstants.MAIN_LOGGER}.{name}")


def log_function_call(logger: logging.Logger):
    """
    Decorator to log function calls and their execution time.

    Args:
        logger: Logger instance to use

    Returns:
        Decorator function
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger.debug(f"Entering {func.__name__}")

            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
                execution_time = time.perf_counter() - start_time
                logger.debug(f"Completed {func.__name__} in {execution_time:.3f}s")
                return result

            except Exception as e:
                execution_time = time.perf_counter() - start_time
                logger.error(f"Error in {func.__name__} after {execution_time:.3f}s: {str(e)}")
                raise

        return wrapper

    return decorator


class PerformanceLogger:
    """Context manager that logs the duration of an operation."""

    def __init__(self, logger: logging.Logger, operation: str):
        self.logger = logger
        self.operation = operation
        self.start_time = None
        self.elapsed = 0.0

    def __enter__(self):
        self.start_time = time.perf_counter()
        self.logger.debug(f"Starting {self.operation}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start_time

        if exc_type is None:
            self.logger.info(f"Completed {self.operation} in {self.elapsed:.3f}s")
        else:
            self.logger.error(f"Failed {self.operation} after {self.elapsed:.3f}s: {exc_val}")


def log_performance(logger: logging.Logger, operation: str) -> PerformanceLogger:
    """
    Context manager to log performance metrics for operations.

    Args:
        logger: Logger instance to use
        operation: Name of the operation being measured

    Usage:
        with log_performance(logger, "benchmark 3-20-10 weighted"):
            ...
    """
    return PerformanceLogger(logger, operation)
