"""Free riding in the contribution game, on the smallest clean example.

Two agents, two domain points, mirrored distributions. Sharing one
sample each is both optimal and stable, yet two other equilibria exist
where one agent pays for everything while the other rides along.
"""

from pacalloc import (
    enumerate_pure_ne,
    free_rider_instance,
    individual_caps,
    pac_failure_probability,
    price_of_stability,
    utility,
)


def main():
    inst = free_rider_instance()
    costs = tuple(float(c) for c in inst.costs())
    print(f"epsilon={inst.epsilon}  delta={inst.delta:.4f}  costs={costs}")
    print()

    caps = individual_caps(inst)
    print(f"going it alone takes {caps[0]} samples per agent")
    fp = pac_failure_probability(inst, (1, 1), 0, 0)
    print(f"sharing one sample each leaves failure {float(fp):.4f} <= delta")
    print()

    out = enumerate_pure_ne(inst)
    print("pure equilibria and their utilities:")
    for vec in out.pure_ne:
        us = [utility(inst, vec, i) for i in range(2)]
        total = vec.total_cost(inst)
        print(f"  {tuple(vec)}  utilities ({us[0]:+.2f}, {us[1]:+.2f})  total cost {total:.2f}")
    print()

    pos = price_of_stability(inst)
    print(f"optimum {tuple(min(pos.pure_ne, key=lambda v: v.total_cost(inst)))} "
          f"matches the best equilibrium, so the price of stability is {pos.pos:.1f},")
    lone = min(v.total_cost(inst) for v in out.pure_ne if 0 in tuple(v))
    print(f"but the lone-contributor equilibria cost {lone:.2f}, "
          f"{lone / pos.opt_cost:.1f} times the optimum.")


if __name__ == "__main__":
    main()
