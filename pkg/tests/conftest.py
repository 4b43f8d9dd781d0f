from hypothesis import settings

settings.register_profile("triseq", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("triseq")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
