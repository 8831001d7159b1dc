from core.enums import EventType
from core.errors import DomainError
from core.events import Event, create_event
from core.models.report import make_report


def test_event_type_covers_run_and_suite_lifecycle():
    assert EventType.RUN_STARTED.value == "run_started"
    assert EventType.SUITE_FINISHED.value == "suite_finished"
    assert EventType.CHECK_FAILED.value == "check_failed"


def test_create_event_sets_type_name_payload_and_source():
    event = create_event(
        event_type=EventType.CELL_COMPLETED,
        name="cell_completed",
        payload={"n": 3, "model": "product", "failed": 0},
        source="suite",
    )

    assert event.type == EventType.CELL_COMPLETED
    assert event.name == "cell_completed"
    assert event.payload["model"] == "product"
    assert event.source == "suite"
    assert isinstance(event.event_id, str)
    assert isinstance(event.timestamp, str)


def test_create_event_defaults_to_empty_payload():
    event = create_event(EventType.RUN_STARTED, "eval")

    assert event.payload == {}
    assert event.source == "engine"


def test_event_to_dict_from_dict_round_trip():
    original = Event(
        type=EventType.TREND_COMPUTED,
        name="trend_computed",
        payload={"renyi2": [0.04, 0.02, 0.01]},
        source="suite",
    )

    restored = Event.from_dict(original.to_dict())

    assert restored.event_id == original.event_id
    assert restored.type == EventType.TREND_COMPUTED
    assert restored.payload["renyi2"] == [0.04, 0.02, 0.01]
    assert restored.timestamp == original.timestamp


def test_check_helper_picks_type_from_outcome():
    passed = Event.check(make_report("mgl", {"n": 2, "eps": 0.1}, 0.2, 0.3), source="check", sample=4)
    failed = Event.check(make_report("nhc", {"n": 2, "eps": 0.1, "q": 2.0}, 2.0, 1.0, log_scale=True))

    assert passed.type == EventType.CHECK_EVALUATED
    assert passed.source == "check"
    assert passed.payload["sample"] == 4
    assert passed.payload["slack"] == 0.3 - 0.2
    assert failed.type == EventType.CHECK_FAILED
    assert failed.payload["log2_slack"] == -1.0
    assert failed.payload["params"]["q"] == 2.0


def test_cell_and_trend_events_carry_suite_payloads():
    cell = Event.cell(4, "sparse", failed=0)
    trend = Event.trend({"nhc": (0.2, 0.1)})

    assert cell.type == EventType.CELL_COMPLETED
    assert cell.payload == {"n": 4, "model": "sparse", "failed": 0}
    assert trend.type == EventType.TREND_COMPUTED
    assert trend.payload == {"nhc": [0.2, 0.1]}
    assert not cell.is_failure


def test_failure_event_uses_the_error_code():
    event = Event.failure(DomainError("eps must lie in [0.0, 0.5], got 0.7", {"eps": 0.7}))

    assert event.type == EventType.ERROR
    assert event.name == "domain_error"
    assert event.payload["context"] == {"eps": 0.7}
    assert event.source == "cli"
    assert event.is_failure
