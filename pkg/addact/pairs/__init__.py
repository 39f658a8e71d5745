"""H-pairs, their constructions, families and geometric checks."""
