"""Bundled example grammars."""
from importlib import resources


def fixture_text(filename: str) -> str:
    return resources.files(__name__).joinpath(filename).read_text()


def fixture_names(suffix: str = ".tag") -> list:
    return sorted(p.name for p in resources.files(__name__).iterdir() if p.name.endswith(suffix))


def load_fixture(name: str):
    """A grammar (``.tag``) or CFG (``.cfg``) by file name; ``.tag`` is assumed without suffix."""
    from ..formats import parse_cfg_file, parse_grammar_file

    if "." not in name:
        name += ".tag"
    text = fixture_text(name)
    return parse_cfg_file(text) if name.endswith(".cfg") else parse_grammar_file(text)
