from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion at the end of the run."""
    stats = terminalreporter.stats
    lines = []
    for key in ("passed", "failed", "error", "skipped"):
        for rep in stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if key in ("passed", "failed") and getattr(rep, "when", "call") != "call":
                continue
            lines.append((nodeid.split("::")[-1], key.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, outcome in sorted(set(lines)):
            terminalreporter.write_line(f"{outcome:8s} {name}")
