#!/usr/bin/env python3
"""Exact binary MIP solver over LP files, backed by scipy's HiGHS interface.

Usage: lp_mip_solve.py MODEL.lp SOLUTION.txt [TIME_LIMIT_S] [MIP_REL_GAP]

Reads the LP subset written by geomsched (Maximize / Subject To / Bounds /
Binaries / End with <= and = rows) and writes one "name value" line per
variable. Exit codes: 0 solved to optimality, 2 infeasible, 3 stopped at the
time limit, 4 anything else.
"""

import sys


def tokenize(expr):
    out = []
    cur = ""
    for ch in expr:
        if ch.isspace():
            if cur:
                out.append(cur)
                cur = ""
        elif ch in "+-":
            if cur:
                out.append(cur)
                cur = ""
            out.append(ch)
        else:
            cur += ch
    if cur:
        out.append(cur)
    return out


def parse_terms(expr, var_index, order):
    terms = []
    tokens = tokenize(expr)
    i = 0
    while i < len(tokens):
        sign = 1.0
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            break
        coef = 1.0
        if tokens[i][0].isdigit() or tokens[i][0] == ".":
            coef = float(tokens[i])
            i += 1
        name = tokens[i]
        i += 1
        if name not in var_index:
            var_index[name] = len(order)
            order.append(name)
        terms.append((var_index[name], sign * coef))
    return terms


def parse_lp(path):
    var_index = {}
    order = []
    objective = []
    rows = []  # (terms, relation, rhs)
    section = None
    obj_text = ""
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("\\"):
                continue
            if line in ("Maximize", "Subject To", "Bounds", "Binaries", "End"):
                if section == "Maximize":
                    body = obj_text.split(":", 1)[-1]
                    objective = parse_terms(body, var_index, order)
                section = line
                if line == "End":
                    break
                continue
            if section == "Maximize":
                obj_text += " " + line
            elif section == "Subject To":
                body = line.split(":", 1)[-1]
                if "<=" in body:
                    lhs, rhs = body.split("<=")
                    rel = "<="
                else:
                    lhs, rhs = body.rsplit("=", 1)
                    rel = "="
                rows.append((parse_terms(lhs, var_index, order), rel, float(rhs)))
            elif section == "Binaries":
                for name in line.split():
                    if name not in var_index:
                        var_index[name] = len(order)
                        order.append(name)
    return order, objective, rows


def main():
    if len(sys.argv) < 3:
        print("usage: lp_mip_solve.py MODEL.lp SOLUTION.txt [TIME_LIMIT_S] [MIP_GAP]",
              file=sys.stderr)
        return 4
    model_path, solution_path = sys.argv[1], sys.argv[2]
    time_limit = float(sys.argv[3]) if len(sys.argv) > 3 else None
    mip_gap = float(sys.argv[4]) if len(sys.argv) > 4 else 0.0

    try:
        order, objective, rows = parse_lp(model_path)
    except Exception as e:  # noqa: BLE001
        print(f"lp parse failure: {e}", file=sys.stderr)
        return 4

    n = len(order)
    if n == 0:
        open(solution_path, "w").close()
        return 0

    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_matrix

    c = np.zeros(n)
    for idx, coef in objective:
        c[idx] += coef
    c = -c  # milp minimizes

    constraints = []
    if rows:
        data, indices, indptr = [], [], [0]
        lower, upper = [], []
        for terms, rel, rhs in rows:
            acc = {}
            for idx, coef in terms:
                acc[idx] = acc.get(idx, 0.0) + coef
            for idx, coef in acc.items():
                indices.append(idx)
                data.append(coef)
            indptr.append(len(indices))
            if rel == "<=":
                lower.append(-np.inf)
                upper.append(rhs)
            else:
                lower.append(rhs)
                upper.append(rhs)
        matrix = csr_matrix((data, indices, indptr), shape=(len(rows), n))
        constraints.append(LinearConstraint(matrix, lower, upper))

    options = {"mip_rel_gap": mip_gap}
    if time_limit is not None:
        options["time_limit"] = time_limit

    res = milp(c=c, constraints=constraints, integrality=np.ones(n),
               bounds=Bounds(0, 1), options=options)

    # scipy milp status: 0 optimal, 1 iteration/time limit, 2 infeasible,
    # 3 unbounded, 4 other
    if res.status == 2:
        return 2
    if res.status == 1:
        if res.x is not None:
            with open(solution_path, "w") as fh:
                for name, value in zip(order, res.x):
                    fh.write(f"{name} {value:.6f}\n")
        return 3
    if res.status != 0 or res.x is None:
        print(f"solver failure: status={res.status} message={res.message}",
              file=sys.stderr)
        return 4

    with open(solution_path, "w") as fh:
        for name, value in zip(order, res.x):
            fh.write(f"{name} {value:.6f}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
