"""How many trials does contraction need with and without predictions?

Builds a union of random bipartite matchings whose minimum cut isolates
vertex 0, then compares plain Karger, FPZ, and the boosted variants fed
a perfect prediction of that cut.
"""

import numpy as np

from cutboost import (
    QSchedule,
    bipartite_matchings,
    boosted_fpz,
    boosted_karger_trial,
    fpz,
    karger_trial,
    perfect_prediction,
    repeat_until,
    stoer_wagner,
)


def main():
    g = bipartite_matchings(100, 20, 5, np.random.default_rng(0))
    true_cut = stoer_wagner(g)
    print(f"bipartite matchings: n={g.n}, m={g.m}, minimum cut weight {true_cut.weight}")

    pred = perfect_prediction(g, true_cut)
    B, t = float(g.n), 2
    t_fpz = 12
    sched = QSchedule(B=B, eta=0.0, rho=1.0, t=t_fpz)

    runners = {
        "karger": lambda rng: karger_trial(g, rng),
        "fpz": lambda rng: fpz(g, rng),
        "boosted karger": lambda rng: boosted_karger_trial(g, pred, B, t, rng),
        "boosted fpz": lambda rng: boosted_fpz(g, pred, B, t_fpz, sched, rng),
    }
    print("\nmedian trials to hit the minimum cut (10 repetitions each):")
    for name, fn in runners.items():
        counts = []
        for rep in range(10):
            res = repeat_until(fn, true_cut.weight, max_trials=2000, seed=rep)
            counts.append(res.trials if res.trials is not None else 2000)
        print(f"  {name:>15}: {np.median(counts):g}")


if __name__ == "__main__":
    main()
