"""HTTP service exposing the verify/edit/reanalyze loop."""
