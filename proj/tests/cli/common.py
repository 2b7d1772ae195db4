import json
import os
import subprocess
import tempfile
from pathlib import Path

BIN = os.environ.get("ISOSYM_BIN", "isosym")
DATA = Path(__file__).resolve().parent.parent / "data"
SCHEMAS = Path(__file__).resolve().parents[2] / "schemas"


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("ISOSYM_THREADS", None)
    if env:
        full_env.update(env)
    proc = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env)
    report = None
    if proc.stdout.strip().startswith("{"):
        report = json.loads(proc.stdout)
    return proc.returncode, report, proc.stderr


def fixture(name):
    return DATA / name


def scratch_dir():
    return tempfile.TemporaryDirectory(prefix="isosym-cli-")
