import pytest

from cutoperad import binary_signature, make_signature

# signatures used across the suite; d <= 3, arities <= 3, at most two per direction
SIGNATURES = {
    "d2_binary": binary_signature(2),
    "d3_binary": binary_signature(3),
    "d1_a2_b3": make_signature([("a", 2), ("b", 3)]),
    "d2_ht_v": make_signature([("h", 2), ("t", 3)], [("v", 2)]),
    "d2_hg_vu": make_signature([("h", 2), ("g", 2)], [("v", 2), ("u", 3)]),
    "d3_h3_v_z": make_signature([("h", 3)], [("v", 2)], [("z", 2)]),
}


@pytest.fixture
def sig2():
    return binary_signature(2)


@pytest.fixture(params=sorted(SIGNATURES))
def any_sig(request):
    return SIGNATURES[request.param]


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
