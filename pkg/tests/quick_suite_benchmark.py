#!/usr/bin/env python3
"""
QUICK Suite Benchmark - Runtime and memory of every verification suite

Runs each suite at the acceptance sample counts, records wall-clock time and
resident memory, and checks the runtime budgets:
1. cartan: under 10 seconds
2. bending: under 60 seconds
"""

import sys
import os
import time
import json
import psutil
from datetime import datetime
from typing import Dict

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from hypergeo import __version__
from hypergeo.suites import SUITES, run_suite

PROJECT_ROOT = os.path.join(os.path.dirname(__file__), '..')

# Seconds; suites without an entry are only reported
BUDGETS = {
    'cartan': 10.0,
    'bending': 60.0,
}


class QuickSuiteBenchmark:
    """Times every verification suite at a fixed seed and sample count."""

    def __init__(self, seed: int = 7, count: int = 1000):
        self.seed = seed
        self.count = count
        self.process = psutil.Process(os.getpid())

        self.results = {
            'test_date': datetime.now().isoformat(),
            'version': __version__,
            'seed': seed,
            'count': count,
            'system_info': self._get_system_info(),
            'suites': []
        }

        self.results_dir = os.path.join(PROJECT_ROOT, 'results')
        os.makedirs(self.results_dir, exist_ok=True)

    def _get_system_info(self) -> Dict:
        """Get system info."""
        return {
            'cpu_count': psutil.cpu_count(),
            'memory_total_gb': psutil.virtual_memory().total / (1024**3),
            'platform': sys.platform
        }

    def _rss_mb(self) -> float:
        return self.process.memory_info().rss / (1024**2)

    def benchmark(self, name: str) -> Dict:
        print(f"\n--- {name} ---")
        rss_before = self._rss_mb()
        start = time.time()
        result = run_suite(name, self.seed, self.count)
        elapsed = time.time() - start
        budget = BUDGETS.get(name)
        within = budget is None or elapsed < budget

        status = "✅" if result.passed else "✗"
        print(f"  {status} {len(result.properties)} properties in {elapsed:.2f}s"
              + (f" (budget {budget:.0f}s{'' if within else ' EXCEEDED'})" if budget else ""))
        return {
            'suite': name,
            'passed': result.passed,
            'elapsed_sec': elapsed,
            'budget_sec': budget,
            'within_budget': within,
            'rss_delta_mb': self._rss_mb() - rss_before,
            'failed_properties': [p.name for p in result.properties if not p.passed],
        }

    def run_all(self) -> bool:
        """Run every suite; True iff all pass within budget."""
        print("\n" + "="*60)
        print("🧪 QUICK SUITE BENCHMARK")
        print("="*60)
        print(f"Start: {datetime.now().strftime('%H:%M:%S')}")
        print(f"System: {self.results['system_info']['cpu_count']} CPUs, "
              f"{self.results['system_info']['memory_total_gb']:.1f}GB RAM")

        overall_start = time.time()
        for name in sorted(SUITES):
            self.results['suites'].append(self.benchmark(name))
        overall_elapsed = time.time() - overall_start

        # Save
        json_file = os.path.join(self.results_dir, 'suite_timings.json')
        with open(json_file, 'w') as f:
            json.dump(self.results, f, indent=2)

        ok = all(s['passed'] and s['within_budget'] for s in self.results['suites'])
        print("\n" + "="*60)
        print(f"{'✅' if ok else '✗'} COMPLETED in {overall_elapsed:.1f} seconds")
        print("="*60)
        print(f"\nResults: {json_file}")
        return ok


def main():
    print("🚀 Quick Suite Benchmark")
    benchmark = QuickSuiteBenchmark()
    sys.exit(0 if benchmark.run_all() else 1)


if __name__ == '__main__':
    main()
