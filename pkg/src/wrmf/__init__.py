"""Mean-field Widom-Rowlinson model: phases, equations of state, finite-volume oracles."""

__version__ = "0.1.0"
