"""Multiplier-ideal jumping numbers and Hodge spectrum of plane curve germs."""
