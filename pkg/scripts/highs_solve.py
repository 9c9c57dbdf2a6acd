"""Reference external solver: solve an MPS file with HiGHS and write the zfip solution grammar.

Usage: python3 highs_solve.py MODEL.mps SOLUTION.sol
"""

import sys

import highspy


def main(argv):
    mps, sol = argv[1], argv[2]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    if h.readModel(mps) != highspy.HighsStatus.kOk:
        print(f"cannot read {mps}", file=sys.stderr)
        return 2
    h.run()
    status = h.getModelStatus()
    with open(sol, "w") as fh:
        if status == highspy.HighsModelStatus.kOptimal:
            fh.write("status optimal\n")
            fh.write(f"objective {h.getInfo().objective_function_value!r}\n")
            names = h.getLp().col_names_
            for name, val in zip(names, h.getSolution().col_value):
                fh.write(f"{name} {val!r}\n")
        elif status == highspy.HighsModelStatus.kInfeasible:
            fh.write("status infeasible\n")
        else:
            fh.write(f"# {h.modelStatusToString(status)}\nstatus unknown\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
