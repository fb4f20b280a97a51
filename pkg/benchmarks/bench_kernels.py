"""Compare the compiled and numpy kernel backends.

Times each kernel at the shapes a default-sized agent uses, then a full
update step of every algorithm with each backend swapped in, plus the
per-kernel mix that ``paac.numerics.kernels`` selects by default.

    python benchmarks/bench_kernels.py [--repeat N] [--json PATH]
"""

import argparse
import json
import timeit

import numpy as np

from paac.agents import agent_init
from paac.envs import make_env
from paac.gradcheck import random_batch
from paac.numerics import kernels

KERNEL_NAMES = ("dense_forward", "dense_backward", "adam_update", "polyak_update", "quantile_huber")


DEFAULT = {name: getattr(kernels, name) for name in KERNEL_NAMES}


def use_backend(mod):
    for name in KERNEL_NAMES:
        setattr(kernels, name, getattr(mod, name) if mod is not None else DEFAULT[name])


def kernel_cases(rng):
    x = rng.normal(size=(128, 128))
    w = rng.normal(size=(128, 128)) * 0.1
    b = rng.normal(size=128)
    out = np.tanh(x @ w + b)
    gout = rng.normal(size=(128, 128))
    gw, gb = np.zeros_like(w), np.zeros_like(b)
    n = 52_000
    params, grad = rng.normal(size=n), rng.normal(size=n)
    m, v = np.zeros(n), np.zeros(n)
    target = rng.normal(size=n)
    pred = rng.normal(size=(128, 5, 25))
    atoms = rng.normal(size=(128, 115))
    tau = (np.arange(25) + 0.5) / 25
    return {
        "dense_forward 128x128": lambda k: k.dense_forward(x, w, b, kernels.RELU),
        "dense_backward 128x128": lambda k: k.dense_backward(x, w, out, gout, kernels.TANH, gw, gb, False, True),
        "adam_update 52k": lambda k: k.adam_update(params, grad, m, v, 3e-4, 0.9, 0.999, 1e-8, 10),
        "polyak_update 52k": lambda k: k.polyak_update(target, params, 0.005),
        "quantile_huber 128x5x25 vs 115": lambda k: k.quantile_huber(pred, atoms, tau, 1.0),
    }


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", metavar="PATH", help="also write the timings as JSON")
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the numpy fallback is timed")
    results = {}
    for label, fn in kernel_cases(np.random.default_rng(0)).items():
        results[label] = {name: best_of(lambda: fn(mod), args.repeat, 50) for name, mod in backends.items()}

    env = make_env("platform")
    for algo in ("pasac", "pagac", "patqc"):
        label = f"{algo} update (batch 128)"
        results[label] = {}
        for name, mod in list(backends.items()) + [("default", None)]:
            use_backend(mod)
            rng = np.random.default_rng(1)
            agent = agent_init(algo, env.schema, env.obs_dim, rng=rng)
            batch = random_batch(env.schema, env.obs_dim, 128, rng)
            agent.update(batch, rng)
            results[label][name] = best_of(lambda: agent.update(batch, rng), args.repeat, 5)
    use_backend(None)

    names = sorted(backends) + ["default"]
    print(f"{'case':<34}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'speedup':>10}")
    print("(speedup: python over default where timed, else over cython)")
    for label, row in results.items():
        cells = "".join(f"{row[n] * 1e3:>16.4f}" if n in row else f"{'':>16}" for n in names)
        best = row.get("default", row.get("cython"))
        speed = f"{row['python'] / best:>9.2f}x" if best is not None else ""
        print(f"{label:<34}{cells}{speed}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
