import pytest

from revspec import ProfileSpec, assemble_spectrum, build_profile, builtin_profile


@pytest.fixture(scope="session")
def canonical():
    return builtin_profile("canonical")


@pytest.fixture(scope="session")
def paper():
    return builtin_profile("paper-example")


@pytest.fixture(scope="session")
def bump():
    """Factory for the family f = (1 - x^2) * (1 + c * (1 - x^2))."""

    def make(c):
        return build_profile(
            ProfileSpec("polynomial-factor", {"coefficients": [1.0 + c, 0.0, -c]})
        )

    return make


@pytest.fixture(scope="session")
def canonical_spectrum6(canonical):
    return assemble_spectrum(canonical, 6)


@pytest.fixture(scope="session")
def paper_spectrum6(paper):
    return assemble_spectrum(paper, 6)
