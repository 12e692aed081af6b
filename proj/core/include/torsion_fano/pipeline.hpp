#pragma once
// Quotient verification and the command layer behind the CLI.

#include "torsion_fano/catalog.hpp"
#include "torsion_fano/orbifold_rr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tfano {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::string record;
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* find(const std::string& name) const;
};

DiagonalAction record_action(const QuotientRecord& r);
// degree and claimed basket (torsion plus residual) of the quotient
FanoNumericalData quotient_data(const Catalog& cat, const QuotientRecord& r);

// Checks, in order: degree, equations, basket, torsion-vanishing, cover,
// series (RR against Molien, per class), augmentation, generators,
// fixed-locus. A check that throws is recorded as failed.
VerifyReport verify_record(const Catalog& cat, const QuotientRecord& r, int order = 12);

// ---- commands ----------------------------------------------------------

enum ExitCode { kExitOk = 0, kExitMismatch = 1, kExitUndecidable = 2, kExitInputError = 3 };

struct CommandOptions {
    bool json = false;
    unsigned threads = 1;
};

struct CommandOutput {
    int exit_code = kExitOk;
    std::string text;
};

// --golden compares with the catalog baskets of the same group (none listed
// means the group is excluded).
CommandOutput run_enumerate(const Catalog& cat, const std::string& group, const std::optional<std::string>& table_path,
                            bool golden, const CommandOptions& opts);

// target: record key, cover name, or "BASKET:DEGREE" (catalog basket name
// and the degree of the quotient, e.g. "Bt2,4.2:1").
CommandOutput run_hilbert(const Catalog& cat, const std::string& target, int order, bool closed_form,
                          const CommandOptions& opts);

CommandOutput run_verify(const Catalog& cat, const std::string& record, int order, const CommandOptions& opts);

// every table, exclusion, series and verdict in one byte-stable document
CommandOutput run_reproduce(const Catalog& cat, const CommandOptions& opts);

} // namespace tfano
