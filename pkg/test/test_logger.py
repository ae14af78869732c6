import logging

from projquant.logger import get_logger


def test_level_follows_environment(monkeypatch):
    monkeypatch.setenv('LOG_LEVEL', 'debug')
    assert get_logger('projquant.test.debug').level == logging.DEBUG


def test_unknown_level_falls_back_to_info(monkeypatch):
    monkeypatch.setenv('LOG_LEVEL', 'loud')
    assert get_logger('projquant.test.loud').level == logging.INFO
