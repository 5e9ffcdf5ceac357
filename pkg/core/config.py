"""
Configuration settings for the Birkhoff slicing toolkit
"""
from typing import Dict, Tuple


class Config:
    """Configuration class for the slicing toolkit"""
    # Default settings
    DEFAULT_LOG_LEVEL = "INFO"
    DEFAULT_FORMAT = "json"
    DEFAULT_METHOD = "both"

    # Order ranges accepted by the CLI commands (inclusive)
    BASIS_MIN_N = 2
    BASIS_MAX_N = 8
    VERTICES_MIN_N = 2
    VERTICES_MAX_N = 5
    VOLUME_MIN_N = 3
    # B_4 slices are 8-dimensional; their exact hulls take minutes each, so B_4 needs --force
    VOLUME_MAX_N = 3

    # Largest n for which each exhaustive verification runs without --force
    CHECK_LIMITS = {
        "theorem4": 5,
        "lemma12": 5,
        "bound": 5,
        "unimodular": 8,
        "genpos": 4,
    }

    # Exact convex hull limits
    HULL_MAX_DIMENSION = 9
    HULL_MAX_VERTICES = 5000

    OUTPUT_FORMATS = ["json", "csv"]
    VOLUME_METHODS = ["slice", "oracle", "both"]

    @classmethod
    def available_checks(cls) -> Tuple[str, ...]:
        """Verification names in their canonical run order"""
        return tuple(cls.CHECK_LIMITS)

    @classmethod
    def get_check_limit(cls, check: str) -> int:
        """Get the feasibility limit of a verification"""
        if check not in cls.CHECK_LIMITS:
            raise ValueError(f"Unknown check: {check}")
        return cls.CHECK_LIMITS[check]

    @classmethod
    def get_n_range(cls, command: str) -> Tuple[int, int]:
        """Get the (min, max) order accepted by a command"""
        ranges: Dict[str, Tuple[int, int]] = {
            "basis": (cls.BASIS_MIN_N, cls.BASIS_MAX_N),
            "vertices": (cls.VERTICES_MIN_N, cls.VERTICES_MAX_N),
            "volume": (cls.VOLUME_MIN_N, cls.VOLUME_MAX_N),
        }
        if command not in ranges:
            raise ValueError(f"Unknown command: {command}")
        return ranges[command]


class AppTexts:
    """Text constants for the command-line front end"""

    APP_TITLE = "birkhoff-slicer"
    APP_DESCRIPTION = (
        "Exact change of basis putting Birkhoff polytopes into 1-general position, "
        "with exhaustive verification and slicing volumes"
    )

    N_OUT_OF_RANGE = "n={n} is outside the supported range {low}..{high} for '{command}' (use --force to lift the upper cap)"
    CHECK_INFEASIBLE = "check '{check}' is limited to n <= {limit}; got n={n} (use --force to override)"
    UNKNOWN_CHECK = "unknown check '{check}'; choose from {choices}"
    MISSING_TARGET = "volume needs either --n or --input"
    BOTH_TARGETS = "volume takes --n or --input, not both"

    VERIFY_PASSED = "✅ {check}: pass"
    VERIFY_FAILED = "❌ {check}: FAIL"
    VOLUMES_EQUAL = "✅ slicing and oracle volumes agree: {value}"
    VOLUMES_DIFFER = "❌ slicing volume {sliced} differs from oracle volume {oracle}"
    PRECONDITION_FAILED = "❌ precondition violated: {message}"
