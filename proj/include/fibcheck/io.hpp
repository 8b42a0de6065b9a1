#pragma once

#include <json.hpp>

#include "fibcheck/sliced.hpp"
#include "fibcheck/twosided.hpp"

namespace fibcheck {

using Json = nlohmann::ordered_json;

Json cat_to_json(const FinCat& c);
RawCategory raw_from_json(const Json& j);
// string = catalog name or file path; object = inline category
CatPtr cat_ref(const Json& j);

Json functor_to_json(const Functor& f);
Functor functor_from_json(const Json& j);

struct InstanceFile {
  std::string kind;  // "fibration" | "sliced" | "two-sided"
  std::optional<Functor> pi;
  std::optional<SlicedMap> sliced;
  std::optional<TwoSidedInstance> twosided;
};

InstanceFile instance_from_json(const Json& j);
Json fibration_to_json(const Functor& pi);
Json sliced_to_json(const SlicedMap& m);
Json twosided_to_json(const TwoSidedInstance& inst);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace fibcheck
