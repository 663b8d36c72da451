"""
Desk-Scale Verification Sweep
Runs every verification in turn, prints a banner per step and saves one
JSON report per step under the output directory
"""
import sys
import time

from modules import config
from modules.reports import ReportWriter, RunReport
from modules.verification import (
    verify_identities,
    verify_lmc,
    verify_multigraph_maxima,
    verify_omega_extremal,
    verify_poisson,
    verify_small_m,
    verify_two_regular_extremal,
    verify_umc,
)


STEPS = [
    ("identities", lambda: verify_identities(150, chain_limit=60)),
    ("2reg_extremal", lambda: verify_two_regular_extremal(14)),
    ("omega_extremal", lambda: verify_omega_extremal(14)),
    ("lmc_r3", lambda: verify_lmc(12, 3)),
    ("lmc_multi_r3", lambda: verify_lmc(8, 3, multi=True)),
    ("umc_6", lambda: verify_umc(6, 3)),
    ("umc_8", lambda: verify_umc(8, 3)),
    ("umc_10", lambda: verify_umc(10, 3)),
    ("umc_12", lambda: verify_umc(12, 3)),
    ("smallm_r2", lambda: verify_small_m(12, 2)),
    ("smallm_r3", lambda: verify_small_m(12, 3)),
    ("multi_max_r2", lambda: verify_multigraph_maxima(4, 2)),
    ("multi_max_r3", lambda: verify_multigraph_maxima(4, 3)),
    ("poisson", lambda: verify_poisson(200, 3, 10000, config.DEFAULT_SEED)),
]


def print_banner(text):
    print("\n" + "=" * 70)
    print(f"  {text}")
    print("=" * 70)


def main():
    config.configure_logging("INFO")
    writer = ReportWriter()
    failed = []

    print_banner("MATCHING POLYNOMIAL VERIFICATION SWEEP")
    for name, step in STEPS:
        print_banner(name)
        started = time.perf_counter()
        result = step()
        elapsed = time.perf_counter() - started
        report = RunReport(
            command=f"verify {result.name}",
            parameters=result.parameters,
            payload=result.to_dict(),
            seed=config.DEFAULT_SEED if name == "poisson" else None,
            wall_time=elapsed,
        )
        report_path, _ = writer.save(report, name)
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {result.checked} checks, {result.failure_count} failures in {elapsed:.1f}s")
        print(f"[INFO] Report: {report_path}")
        if not result.passed:
            failed.append(name)

    print_banner("SUMMARY")
    print(f"{len(STEPS) - len(failed)}/{len(STEPS)} steps passed")
    for name in failed:
        print(f"[FAIL] {name}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
