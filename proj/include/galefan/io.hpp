#pragma once

// Matrix text format and JSON reports. Column indices in all output are 1-based.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "galefan/search.hpp"

namespace galefan {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line 1 "rows cols", then `rows` lines of integers; '#' starts a comment line.
IntMatrix read_matrix(std::istream& in);
IntMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const IntMatrix& m);

using nlohmann::json;

json to_json(const Integer& x);
json to_json(const IntVector& v);
json to_json(const IntMatrix& m);
json indices_json(const IndexSet& s);

json to_json(const FValidation& v);
json to_json(const WValidation& v);
json to_json(const Chamber& c, std::size_t alias);
json to_json(const PrimitiveCollection& pc);
json to_json(const HyperplaneStatus& hs);
json to_json(const BorderingStatus& st);
json to_json(const WallCrossing& wc);
json to_json(const ClassificationReport& rep);
json to_json(const AnticanonicalReport& rep);
json to_json(const Finding& f, const SearchParams& params);

/// Inverse of to_json for integer matrices.
IntMatrix matrix_from_json(const json& j);

}  // namespace galefan
