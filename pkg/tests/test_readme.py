"""Every console example in the README runs and prints exactly what is shown."""

import io
import re
import shlex
from pathlib import Path

import pytest

from nildom.cli import run

README = Path(__file__).resolve().parent.parent / "README.md"


def examples():
    text = README.read_text()
    out = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        cmd, expected = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd is not None:
                    out.append((cmd, "\n".join(expected)))
                cmd, expected = line[2:], []
            else:
                expected.append(line)
        if cmd is not None:
            out.append((cmd, "\n".join(expected)))
    return out


def test_readme_has_examples():
    assert len(examples()) >= 15


@pytest.mark.parametrize("cmd,expected", examples(), ids=[c for c, _ in examples()])
def test_readme_example(cmd, expected):
    argv = shlex.split(cmd)
    assert argv[0] == "nildom"
    buf = io.StringIO()
    code = run(argv[1:], out=buf)
    assert code in (0, 1)
    assert buf.getvalue() == expected + "\n"
