"""Multi-modal moisture-content prediction for convective fruit drying.

Library + CLI: a synthetic drying-data simulator (tabular records plus
rendered slice images), an image preprocessing pipeline, a late-fusion
regression model with classical baselines, and a condition-grouped
cross-validation experiment harness.
"""

__version__ = "0.1.0"
