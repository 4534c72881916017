"""Census of the (2,2) Turing machine class.

Enumerates all 10,000 two-state machines, runs them to the 107-step
cutoff, and inspects the resulting output-frequency table: the simplest
strings are produced most often, which is exactly what turns frequency
into a complexity estimate via -log2.
"""

import time

from cabdm import build_table, decode_machine, max_halting_steps, run_machine


def main():
    t0 = time.time()
    table = build_table(2)
    print(f"enumerated {table.total} machines in {time.time() - t0:.2f}s")
    print(f"halting tally (both blank conventions): {table.halting}")
    print(f"distinct outputs: {len(table.entries)}")
    print(f"longest halting run: {max_halting_steps(2)} steps")

    print("\noutputs by frequency (count -> complexity in bits):")
    ranked = sorted(table.entries.items(), key=lambda kv: (-kv[1][0], len(kv[0]), kv[0]))
    for s, (count, value) in ranked:
        print(f"  {s:<5} count={count:<5} ctm={value:.4f}")

    print("\nnote the exact symmetries: complements and reversals tie.")

    machine = decode_machine(4242, 2)
    outcome = run_machine(machine, 107)
    print(f"\nmachine #4242 transitions: {machine.transitions}")
    print(f"outcome: {outcome}")


if __name__ == "__main__":
    main()
