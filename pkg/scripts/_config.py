"""Tiny helper: build an argparse parser from a dataclass config."""
import argparse
from dataclasses import fields


def parse_config(cls, description=None, argv=None):
    ap = argparse.ArgumentParser(description=description or cls.__doc__)
    for f in fields(cls):
        kind = f.type if isinstance(f.type, type) else eval(f.type)  # noqa: S307
        if kind is bool:
            ap.add_argument(f"--{f.name.replace('_', '-')}", action="store_true", default=f.default)
        else:
            ap.add_argument(f"--{f.name.replace('_', '-')}", type=kind, default=f.default)
    return cls(**vars(ap.parse_args(argv)))
