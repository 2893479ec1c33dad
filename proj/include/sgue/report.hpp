#pragma once

#include "sgue/asymptotics.hpp"
#include "sgue/mc.hpp"
#include "sgue/rh.hpp"

#include <json.hpp>

namespace sgue {

using json = nlohmann::ordered_json;

// numbers travel as decimal strings; complex values as "a+bi"
std::string complex_to_string(const Complex& z);
Complex complex_from_string(const std::string& s);

json to_json(const ModelParams& p);
json to_json(const MomentTable& t);
json to_json(const PartitionResult& r);
json to_json(const EquilibriumData& eq);
json to_json(const EquilibriumReport& r);
json to_json(const CurveData& cd);
json to_json(const OuterReport& r);
json to_json(const AsymptoticReport& r);
json to_json(const AsymDerivatives& d);
json to_json(const SmallV2Report& r);
json to_json(const CompareRow& r);
json to_json(const RHCheckReport& r);
json to_json(const EstimateResult& r);
json to_json(const TaylorCoeff& c);
json to_json(const BerryShukla& b);

}  // namespace sgue
