#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qbivar/catalog.hpp"
#include "qbivar/comoments.hpp"
#include "qbivar/data.hpp"
#include "qbivar/fit.hpp"
#include "qbivar/gof.hpp"
#include "qbivar/lmoments.hpp"
#include "qbivar/mrq.hpp"

namespace qbd {

using Json = nlohmann::ordered_json;

Json to_json(const NumericConfig& cfg);
Json to_json(const MarginalParams& p);
Json to_json(const BivariateParams& bp);
Json to_json(const LMomentVector& l);
Json to_json(const LComomentSet& s);
Json to_json(const PowerCaseReport& r);
Json to_json(const FitResult& f);
Json to_json(const GofResult& g, bool include_pit = true);
Json to_json(const MrqParams& p);
Json to_json(const MrqFit& f);
Json to_json(const CatalogEntry& e);

/// Skeleton shared by every command: command echo, input digest (when a
/// sample is given), numeric configuration and an empty warning list.
Json make_report(const std::string& command, const std::vector<std::string>& argv,
                 const PairedSample* sample, const NumericConfig& cfg);

/// Doubles are written with 17 significant digits, so parsing the text back
/// gives identical values.
std::string dump(const Json& j);

}  // namespace qbd
