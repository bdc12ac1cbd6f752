"""Test suite for fractional-thermistor."""
