"""CLI golden cases: name -> (argv, expected exit code).

Paths are relative to the tests directory, which is the working directory
for every run.
"""

from pathlib import Path

TESTS = Path(__file__).parent
GOLDEN = TESTS / "golden"

U5 = ",".join(["0.4472136"] * 5)

CASES = {
    "bounds_chsh": (["bounds", "--builtin", "chsh"], 0),
    "bounds_kcbs": (["bounds", "--builtin", "kcbs"], 0),
    "bounds_cycle7": (["bounds", "--cycle", "7"], 0),
    "bounds_circulant": (["bounds", "--circulant", "8", "1,4"], 0),
    "bounds_graph6": (["bounds", "--graph6", "data/pentagon.g6"], 0),
    "bounds_weighted": (["bounds", "--edges", "data/weighted6.json"], 0),
    "scenario_chsh": (["scenario", "data/chsh_scenario.json", "--expression", "data/chsh_expression.json"], 0),
    "scenario_kcbs": (["scenario", "data/kcbs_scenario.json"], 0),
    "scenario_builtin_kcbs": (["scenario", "--builtin", "kcbs"], 0),
    "scenario_single_test": (["scenario", "data/single_test.json"], 0),
    "membership_th_umbrella": (["membership", "--cycle", "5", "--body", "th", "--p", U5], 0),
    "membership_th_half": (["membership", "--cycle", "5", "--body", "th", "--assignment", "data/half.json"], 0),
    "membership_qstab_half": (["membership", "--builtin", "kcbs", "--body", "qstab", "--p", "1/2,1/2,1/2,1/2,1/2"], 0),
    "membership_stab_half": (["membership", "--cycle", "5", "--body", "stab", "--p", "1/2,1/2,1/2,1/2,1/2"], 0),
    "perfect_c5": (["perfect", "--cycle", "5"], 0),
    "perfect_c6": (["perfect", "--cycle", "6"], 0),
    "or_verify_umbrella": (["or-verify", "--cycle", "5", "--or", "data/umbrella5.json"], 0),
    "or_verify_bad": (["or-verify", "--cycle", "5", "--or", "data/bad_or.json"], 0),
    "error_small_cycle": (["bounds", "--cycle", "2"], 1),
    "error_missing_file": (["bounds", "--edges", "data/nope.json"], 1),
    "error_broken_json": (["bounds", "--edges", "data/broken.json"], 1),
    "error_bad_flag": (["bounds", "--cycle", "5", "--tol", "-1"], 1),
    "error_no_graph": (["perfect"], 1),
    "error_cap": (["perfect", "--cycle", "19"], 1),
    "error_assignment_length": (["membership", "--cycle", "5", "--body", "qstab", "--p", "1,0"], 1),
    "error_nonconvergence": (["bounds", "--circulant", "30", "1,3,7", "--tol", "1e-13", "--max-iter", "2"], 2),
}
