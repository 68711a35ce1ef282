"""Regenerate the residual table for unions of paths.

    python3 scripts/derive_residual_table.py

Writes ``src/incidence/data/residual_table.txt`` (lines ``p3 p5 ls rs``)
and prints the checksum to record in ``formulas.RESIDUAL_TABLE_SHA256``.
"""
from pathlib import Path

from incidence.formulas import RESIDUAL_TABLE_FILE, derive_residual_table, table_digest

if __name__ == "__main__":
    text = derive_residual_table()
    out = Path(__file__).resolve().parent.parent / "src" / "incidence" / "data" / RESIDUAL_TABLE_FILE
    out.write_text(text)
    print(text, end="")
    print("sha256", table_digest(text))
