"""Shared reference values for the test suite.

``EQUICORR_VIF_R_PAIRS`` lists, for six equicorrelated predictors, the
common off-diagonal correlation (3 decimals) that realizes each VIF
target on the canonical grid.
"""

EQUICORR_VIF_R_PAIRS = (
    (1.0, 0.000), (1.1, 0.176), (1.2, 0.261), (1.3, 0.326), (1.4, 0.380),
    (1.5, 0.424), (1.6, 0.462), (1.7, 0.496), (1.8, 0.525), (1.9, 0.551),
    (2.0, 0.574), (2.1, 0.595), (2.2, 0.614), (2.3, 0.631), (2.4, 0.647),
    (2.5, 0.661), (2.6, 0.674), (2.7, 0.687), (2.8, 0.699), (2.9, 0.709),
    (3.0, 0.719), (3.1, 0.728), (3.2, 0.737), (3.3, 0.745), (3.4, 0.752),
    (3.5, 0.759), (3.6, 0.766), (3.7, 0.773), (3.8, 0.779), (3.9, 0.785),
    (4.0, 0.790), (4.1, 0.795), (4.2, 0.800), (4.3, 0.804), (4.4, 0.809),
    (4.5, 0.814), (4.6, 0.818), (4.7, 0.821), (4.8, 0.825), (4.9, 0.829),
    (5.0, 0.832), (5.2, 0.839), (5.4, 0.845), (5.6, 0.850), (5.8, 0.856),
    (6.0, 0.860), (6.2, 0.865), (6.4, 0.869), (6.6, 0.873), (6.8, 0.877),
    (7.0, 0.880), (7.2, 0.884), (7.4, 0.887), (7.6, 0.890), (7.8, 0.893),
    (8.0, 0.895), (8.2, 0.898), (8.4, 0.900), (8.6, 0.903), (8.8, 0.905),
    (9.0, 0.907), (9.2, 0.909), (9.4, 0.911), (9.6, 0.913), (9.8, 0.915),
    (10.0, 0.916), (11.0, 0.924), (12.0, 0.931), (13.0, 0.936), (14.0, 0.941),
    (15.0, 0.944), (16.0, 0.948), (17.0, 0.951), (18.0, 0.953), (19.0, 0.956),
    (20.0, 0.958), (25.0, 0.967), (30.0, 0.972), (35.0, 0.976), (40.0, 0.979),
    (45.0, 0.982), (50.0, 0.983),
)

#: Coefficients for the 20-predictor variant (beta_main first).
TWENTY_VAR_REFERENCE = (
    2.0, 1.3, 1.5, 6.0, 3.0, 1.0, 6.6, 0.7, 3.1, 2.6,
    7.5, 6.9, 9.0, 1.3, 4.5, 0.8, 2.6, 5.3, 0.8, 2.4,
)
