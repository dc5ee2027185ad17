#pragma once

#include <string>
#include <vector>

#include "oscil/classify.hpp"
#include "oscil/integrate.hpp"
#include "oscil/ode.hpp"

namespace oscil {

// Named equation with parameter slots, a default window, and the sign
// analysis it is expected to produce there.
struct CatalogEntry {
    std::string name;
    std::string note;
    std::string b, c, f;
    ParamBindings defaults;
    std::vector<double> singular_points;
    Window window;
    std::vector<std::string> boundaries;  // expected D roots, expressions in the parameters
    std::vector<Oscillation> labels;      // expected piece verdicts at defaults
    std::string exact;                    // elementary solution, when one exists
    std::string particular;               // claimed particular solution (forced entries)
    InitialCondition ic;                  // default initial condition
};

const std::vector<CatalogEntry>& catalog_entries();

// nullptr when no entry carries the name
const CatalogEntry* find_entry(const std::string& name);

OdeSpec make_spec(const CatalogEntry& entry, const ParamBindings& overrides = {});

// Expected boundary expressions evaluated under defaults + overrides, sorted.
std::vector<double> boundary_values(const CatalogEntry& entry,
                                    const ParamBindings& overrides = {});

struct RegressionResult {
    std::string name;
    bool ok = false;
    std::vector<std::string> notes;  // one line per mismatch
    ClassificationReport report;
};

// Classifies the entry at its defaults and compares verdicts and boundary
// locations (within 1e-6) against the stored expectations, then integrates
// one solution per piece and checks the zero counts are consistent with the
// verdicts.
RegressionResult regression_check(const CatalogEntry& entry, double margin = 1e-6,
                                  int samples = 2048);

}  // namespace oscil
