"""Experiment configuration, orchestration, persistence and plotting."""
