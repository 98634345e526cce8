"""Leavitt path algebra toolkit: normal forms, Chen simple modules, resolutions and Ext."""

__version__ = "0.1.0"
