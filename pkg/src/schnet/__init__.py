"""Schematic-to-netlist graph extraction and evaluation toolkit."""

__version__ = "0.1.0"
