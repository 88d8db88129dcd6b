"""emokit: multimodal emotion recognition toolkit.

Unimodal pipelines (face, body movement, speech, spoken language), late
fusion of their probability outputs, an evaluation harness, and a live
session service with a web console API.
"""

__version__ = "0.1.0"
