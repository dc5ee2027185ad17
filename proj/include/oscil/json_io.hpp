#pragma once

#include <string>

#include <json.hpp>

#include "oscil/catalog.hpp"
#include "oscil/classify.hpp"
#include "oscil/integrate.hpp"
#include "oscil/verify.hpp"

namespace oscil {

using ordered_json = nlohmann::ordered_json;

// All doubles rendered with 17 significant digits so identical runs print
// identical bytes; non-finite values become null.
std::string fmt_g17(double v);
std::string write_json(const ordered_json& j, int indent = 2);

ordered_json json_of(const Window& w);
ordered_json json_of(const ClassificationReport& r);
ordered_json json_of(const Zero& z);
ordered_json json_of(const ZeroList& zl);
ordered_json json_of(const IntegrationStats& s);
ordered_json json_of(const SturmCheckResult& r);
ordered_json json_of(const WronskianCheckResult& r);
ordered_json json_of(const RiccatiCheckResult& r);
ordered_json json_of(const NormalFormCheckResult& r);
ordered_json json_of(const OscillatesAboutResult& r);
ordered_json json_of(const CatalogEntry& e);
ordered_json json_of(const RegressionResult& r);

// CSV with header x,y,dy and one row per node, LF endings.
std::string trajectory_csv(const Trajectory& t);

}  // namespace oscil
