from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from tracederiv.base import Link

import json
import os
from multiprocessing import current_process

import pandas as pd
import yaml

YAML_EXTENSIONS = (".yaml", ".yml")
JSON_EXTENSIONS = (".json",)


def _is_yaml(filename: str) -> bool:
    return filename.lower().endswith(YAML_EXTENSIONS)


def _is_json(filename: str) -> bool:
    return filename.lower().endswith(JSON_EXTENSIONS)


def save_dict(data: dict, filename: str = None) -> None:
    """Save a dict as YAML or JSON, chosen by the file extension (default Output.yaml)"""
    filename = filename or "Output.yaml"
    if _is_json(filename):
        with open(filename, "w") as file:
            json.dump(data, file, indent=2)
    elif _is_yaml(filename):
        with open(filename, "w") as file:
            yaml.dump(data, file, sort_keys=False)
    else:
        raise ValueError(f"Unknown file extension for {filename}, use .yaml, .yml or .json")


def load_dict(filename: str) -> dict:
    if _is_yaml(filename):
        with open(filename, "r") as file:
            return yaml.safe_load(file)
    elif _is_json(filename):
        with open(filename, "r") as file:
            return json.load(file)
    raise ValueError(f"Unsupported file extension for {filename}")


def save_chain(
    link: Link, filename: str = None, defaults=True, version=True, log_level=True
) -> None:
    save_dict(
        link.get_params(defaults=defaults, version=version, log_level=log_level),
        filename,
    )


def load_chain(filename: str) -> Link:
    from tracederiv.base import Link  # deferred, base imports this module

    data = load_dict(filename)
    if not isinstance(data, dict) or "__class__" not in data:
        raise ValueError(f"Failed to find Link or Chain in {filename}.")
    return Link.from_params(data)


def df_process_to_csv(df: pd.DataFrame, filename: str, **kwargs) -> None:
    """
    Write a DataFrame to CSV. Inside a worker process the process id is
    appended to the filename, so partitions processed in parallel do not
    overwrite each other.

    Parameters
    ----------
    df : pd.DataFrame
        The DataFrame to be written.
    filename : str
        Target CSV filename.
    **kwargs : dict
        Passed on to `pd.DataFrame.to_csv`.
    """
    cur_proc = current_process()

    if cur_proc.name != "MainProcess":
        base_path, ext = os.path.splitext(filename)
        filename = f"{base_path}_p{cur_proc.pid}{ext}"

    df.to_csv(path_or_buf=filename, **kwargs)
