#pragma once

#include <optional>
#include <string>

#include "pdcrystal/io.hpp"

namespace pdcrystal {

// One function per CLI subcommand. Each returns a ReportFile whose exit_code is already
// combined (0 all-pass, 1 any fail, 2 inconclusive only); input problems — bad shapes, unmet
// build preconditions, parse errors in auxiliary inputs — surface as exceptions for the
// caller to map to exit code 3.

// Structural checks: integrability, nilpotence, and for absolute flavors the enhanced
// relation and the a-smallness certificate (inconclusive when the certificate refuses).
ReportFile cmd_check(const SpecFile& sf);

// Formal coefficient identities up to the given total degree plus the simplicial identities
// for a representative flavor of each kind at that PD degree.
ReportFile cmd_identities(int degree);

// Build the stratification table at the file's pd_degree and dump it into the notes; with
// verify set, also run the cocycle and iteration-converse checks.
ReportFile cmd_stratify(const SpecFile& sf, bool verify);

// Build and fully verify: cocycle condition plus iteration converse.
ReportFile cmd_verify_cocycle(const SpecFile& sf);

// Betti numbers per multidegree over the effective window, with Euler-characteristic
// balance checks; absolute flavors get the enhanced complex as well.
ReportFile cmd_cohomology(const SpecFile& sf);

// Sen kernel and exactness checks; when b_text is given (";"-separated series, the n-th
// entry the X^[n] coefficient) the recursion is solved and f lands in the notes together
// with its top obstruction.
ReportFile cmd_sen(const SpecFile& sf, const std::optional<std::string>& b_text);

// Realization suite: identity element, seeded translation homomorphism law, shifted-spectrum
// intertwining; when g is given its matrix is computed and dumped into the notes.
ReportFile cmd_realize(const SpecFile& sf, const std::optional<GroupElementData>& g);

}  // namespace pdcrystal
