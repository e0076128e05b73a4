_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, text = mark.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        status = "PASS" if call.excinfo is None else "FAIL"
        detail = dict(item.user_properties).get("detail", "")
        _criteria[number] = (status, text, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, text, detail = _criteria[number]
        line = f"criterion {number}: {status}  {text}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
