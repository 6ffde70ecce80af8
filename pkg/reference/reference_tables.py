# Published reference values for the Thomas-Fermi ion series.
# Used by the validation checks and the tests only; the computation path never reads them.

REFERENCE_VERSION = "1.0.0"

# K-series coefficients f_0..f_6 (K = 2/a^(3/2)), tolerance 5e-6
TABLE_K_COEFFICIENTS = {
    "columns": ["aX", "(aX)^-1", "(b/a)^2", "b/a", "B/a", "N"],
    "rows": {
        "f_0": [1.0, 1.0, 1.0, 1.0, 0.0, 0.0],
        "f_1": [0.490873, -0.490873, -1.178097, -0.589049, 0.294524, 0.098175],
        "f_2": [0.339148, -0.098191, 0.122481, -0.112248, 0.050000, 0.062248],
        "f_3": [0.263353, -0.048674, 0.024990, -0.053624, 0.021892, 0.045145],
        "f_4": [0.217190, -0.030722, 0.010085, -0.032845, 0.012502, 0.035173],
        "f_5": [0.185856, -0.021795, 0.005303, -0.022715, 0.008155, 0.028663],
        "f_6": [0.163069, -0.016574, 0.003220, -0.016894, 0.005768, 0.024093],
    },
    "tolerance": 5e-6,
}

# Partial sums of the K-series at the neutral atom, tolerance 1e-5
TABLE_K_PARTIAL_SUMS = {
    "K": 0.999367,
    "columns": ["aX", "(aX)^-1", "(b/a)^2", "b/a", "B/a", "N"],
    "rows": {
        "S_0": [1.0, 1.0, 1.0, 1.0, 0.0, 0.0],
        "S_3": [2.092136, 0.362787, -0.030081, 0.245695, 0.366125, 0.205342],
        "S_4": [2.308777, 0.332142, -0.020022, 0.212933, 0.378597, 0.240426],
        "S_5": [2.494047, 0.310415, -0.014735, 0.190290, 0.386726, 0.269000],
        "S_6": [2.656499, 0.293903, -0.011527, 0.173460, 0.392473, 0.293002],
    },
    "tolerance": 1e-5,
}

# N-series coefficients, f = N^alpha (f~_0 + f~_1 N + ...), tolerance 5e-6, 1e-4 for f~_4 and f~_5
TABLE_N_COEFFICIENTS = {
    "columns": ["c", "X^-1", "b", "B", "a"],
    "alpha": ["-2/3", "-2/3", "-2/3", "1/3", "-2/3"],
    "rows": {
        "f~_0": [0.337821, 0.337821, 0.337821, 1.013463, 0.337821],
        "f~_1": [-0.121969, -0.234576, -0.572397, -0.429297, 1.454528],
        "f~_2": [-0.022859, -0.019738, 0.214837, 0.092072, -0.214459],
        "f~_3": [-0.011826, -0.011507, 0.008230, 0.002471, 0.008229],
        "f~_4": [-0.007633, -0.007524, 0.003983, 0.000907, 0.001520],
        "f~_5": [-0.005504, -0.005410, 0.002114, 0.000445, 0.000249],
    },
    "tolerance": 5e-6,
    # f~_4 and f~_5 of a and b are ill-conditioned in N_1..N_6
    "row_tolerance": {"f~_4": 1e-4, "f~_5": 1e-4},
}

# Partial sums of the N-series at N = 1; S_3 of b is printed as -0.011507 but sums to -0.011509
TABLE_N_PARTIAL_SUMS = {
    "N": 1.0,
    "columns": ["c", "X^-1", "b", "B", "a"],
    "rows": {
        "S_0": [0.337821, 0.337821, 0.337821, 1.013462, 0.337821],
        "S_3": [0.181166, 0.071998, -0.011507, 0.678709, 1.586119],
        "S_4": [0.173532, 0.064474, -0.007524, 0.679617, 1.587639],
        "S_5": [0.168028, 0.059063, -0.005410, 0.680063, 1.587889],
    },
    "limits": {"c": 0.0977, "X^-1": 0.0, "b": 0.0, "B": 0.680601, "a": 1.588071},
    "tolerance": 1e-5,
    "row_tolerance": {"S_4": 1e-4, "S_5": 1e-4},
}

# T(-2/3), upper triangular with unit diagonal; converged values sit 1.2e-6 off the printed ones
TRANSFORM_MATRIX = {
    "alpha": "-2/3",
    "entries": [
        [1.0, 0.422703, -0.006118, 0.000023, 0.000000, 0.000000],
        [0.0, 1.0, -0.211351, 0.070063, -0.025553, 0.009775],
        [0.0, 0.0, 1.0, -0.845406, 0.548271, -0.317675],
        [0.0, 0.0, 0.0, 1.0, -1.479461, 1.428504],
        [0.0, 0.0, 0.0, 0.0, 1.0, -2.113515],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ],
    "tolerance": 2e-6,
}

# a(N=1): (i) Taylor terms a_n, (ii) improved terms (7/3) c_n B(n+1/3, 7/3)
NEUTRAL_SLOPE_COMPARISON = {
    "columns": ["0", "1", "2", "3", "4", "5"],
    "terms": {
        "taylor": [0.337821, 1.454528, -0.214459, 0.008229, 0.001520, 0.000249],
        "improved": [1.671061, -0.075416, -0.005140, -0.001330, -0.000505, -0.000237],
    },
    "partial_sums": {
        "taylor": [0.337821, 1.792349, 1.577890, 1.586119, 1.587639, 1.587889],
        "improved": [1.671061, 1.595645, 1.590505, 1.589176, 1.588671, 1.588434],
    },
    "limit": 1.588071,
    "tolerance": 1e-5,
    "row_tolerance": {
        "(i) a_n": [1e-5, 1e-5, 1e-5, 1e-5, 1e-4, 1e-4],
        "(i) S_n": [1e-5, 1e-5, 1e-5, 1e-5, 1e-4, 1e-4],
    },
}

# Neutral-atom limit, C = X^(4/5) b^(1/5) and c = C^(-5/3)
NEUTRAL_LIMIT = {
    "C": 4.03623,
    "C_tolerance": 5e-4,
    "c": 0.097733,
    "c_tolerance": 2e-5,
}

# Initial slope of the neutral atom and K = 2/a^(3/2)
CRITICAL_SLOPE = {
    "a": 1.588071,
    "K": 0.999367,
    "tolerance": 1e-4,
}

# Conversion factors of the normalized units
UNITS = {
    "length_factor": 1.1295,
    "energy_factor": 2.2590,
}
