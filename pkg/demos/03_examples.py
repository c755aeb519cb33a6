"""The four worked subordination examples, each with a failing control."""
from harmsub import ExampleConfig, run_example

for eid in (1, 2, 3, 4):
    rep = run_example(ExampleConfig(eid, 1.0, 0.15) if eid == 3 else ExampleConfig(eid))
    print(rep.render())
    print()

# example 1: the smallest |psi - 1| sits at m = 1 and equals 2 M1, above M1 + M2
rep = run_example(ExampleConfig(1, 0.8, 0.4))
print("example 1 min |psi-1| =", rep.details["min_reference_distance"], "at m =", rep.details["argmin_m"])
