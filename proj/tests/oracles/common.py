"""Shared helpers for the oracle generators. Output is a C++ header of frozen values."""
import mpmath as mp

mp.mp.dps = 40


def lit(x):
    """Shortest round-tripping double literal."""
    v = float(x)
    r = repr(v)
    if r in ("inf", "-inf", "nan"):
        raise ValueError(r)
    return r


def write_header(path, namespace, blocks, generator):
    with open(path, "w") as f:
        f.write("#pragma once\n")
        f.write(f"// Generated by tests/oracles/{generator}; do not edit.\n\n")
        f.write("#include <array>\n\n")
        f.write(f"namespace oracle::{namespace} {{\n\n")
        for b in blocks:
            f.write(b)
            f.write("\n")
        f.write(f"}}  // namespace oracle::{namespace}\n")


def table(name, struct_fields, rows):
    """struct with double fields + constexpr array of rows."""
    sname = name.capitalize() + "Row"
    out = f"struct {sname}\n{{\n"
    for fld in struct_fields:
        out += f"    double {fld};\n"
    out += "};\n"
    out += f"inline constexpr std::array<{sname}, {len(rows)}> {name} = {{{{\n"
    for r in rows:
        out += "    {" + ", ".join(lit(v) for v in r) + "},\n"
    out += "}};\n"
    return out


# System calibration shared with the library: hop SINR = SINR / b, hop INR = INR / c.
def calibrate(mean_interference, sinr_lin, inr_lin):
    noise = mean_interference / inr_lin
    omega = sinr_lin * (noise + mean_interference)
    return omega, noise
