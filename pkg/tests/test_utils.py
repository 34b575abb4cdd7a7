"""Tests for utility functions."""

import io
import json
import logging

from utils.logger import JSONFormatter, log_check_event, setup_logger


def test_setup_logger_text_format():
    """Test plain logs go to the given stream."""
    stream = io.StringIO()
    logger = setup_logger(name="barc.test.text", level="info", stream=stream)
    logger.debug("hidden")
    logger.info("Suite finished")
    output = stream.getvalue()
    assert "Suite finished" in output
    assert "hidden" not in output
    assert " - INFO - " in output


def test_setup_logger_replaces_handlers():
    """Test repeated setup does not duplicate handlers."""
    setup_logger(name="barc.test.dupes", stream=io.StringIO())
    logger = setup_logger(name="barc.test.dupes", stream=io.StringIO())
    assert len(logger.handlers) == 1
    assert not logger.propagate


def test_setup_logger_file(tmp_path):
    """Test a log file is created along with missing directories."""
    path = tmp_path / "logs" / "barc.log"
    logger = setup_logger(name="barc.test.file", log_file=str(path), stream=io.StringIO())
    logger.warning("written")
    for handler in logger.handlers:
        handler.flush()
    assert "written" in path.read_text()


def test_log_check_event_json():
    """Test check events carry suite, instance and data fields."""
    stream = io.StringIO()
    logger = setup_logger(name="barc.test.json", json_format=True, stream=stream)
    log_check_event(
        logger,
        "counterexample",
        "equivalence",
        "equivalence: first failure at instance 3",
        instance=3,
        extra_data={"eps": 0.1},
    )
    record = json.loads(stream.getvalue().strip())
    assert record["level"] == "WARNING"
    assert record["event_type"] == "counterexample"
    assert record["suite"] == "equivalence"
    assert record["instance"] == 3
    assert record["data"] == {"eps": 0.1}


def test_json_formatter_plain_record():
    """Test records without extra fields format as JSON."""
    record = logging.LogRecord("barc", logging.INFO, __file__, 1, "hello %s", ("world",), None)
    payload = json.loads(JSONFormatter().format(record))
    assert payload["message"] == "hello world"
    assert "event_type" not in payload


def test_json_context_fields():
    """Test run-wide context fields appear on every JSON record."""
    stream = io.StringIO()
    logger = setup_logger(
        name="barc.test.context",
        json_format=True,
        stream=stream,
        context={"command": "check", "seed": 7},
    )
    logger.info("one")
    logger.info("two")
    records = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert [r["message"] for r in records] == ["one", "two"]
    assert all(r["command"] == "check" and r["seed"] == 7 for r in records)
    assert "suite" not in records[0]
