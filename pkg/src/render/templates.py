from pathlib import Path

from jinja2 import Environment, FileSystemLoader

__all__ = [
    'TEMPLATE_DIR',
    'JINJA_ENV_CACHE',
    'jinja_env',
]

TEMPLATE_DIR = Path(__file__).parent / 'templates'

JINJA_ENV_CACHE: dict[str, Environment] = {}


def jinja_env(*template_paths: Path) -> Environment:
    """A cached environment over ``template_paths`` followed by the bundled templates."""
    key = ':'.join(p.as_posix() for p in template_paths)
    if env := JINJA_ENV_CACHE.get(key):
        return env

    searchpath = list(template_paths) + [TEMPLATE_DIR]
    JINJA_ENV_CACHE[key] = env = Environment(
        loader=FileSystemLoader(searchpath=searchpath),
        autoescape=True,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    return env
