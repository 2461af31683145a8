#pragma once

// Barrier-system documents (JSON):
//   {"mode": "rational" | "float", "head_start": ..., "right": [{"a":..,"b":..}],
//    "left": [{"c":..,"d":..}]}
// Rational values are "p/q" strings (integers and exact decimals are also
// read); a JSON floating-point literal in a rational document is rejected as
// lossy. Float values are JSON numbers written with round-trip precision.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "hpfire/barrier_system.hpp"
#include "hpfire/scalar.hpp"
#include "json.hpp"

namespace hpfire {

class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  /// JSON location of the problem, e.g. "right[2].b"; empty for whole-document errors.
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

using AnySystem = std::variant<BarrierSystem<Rational>, BarrierSystem<double>>;

namespace detail {

template <typename Scalar>
nlohmann::json scalar_to_json(const Scalar& x) {
  if constexpr (is_exact_v<Scalar>) {
    return format_scalar(x);
  } else {
    return x;
  }
}

template <typename Scalar>
Scalar scalar_from_json(const nlohmann::json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_scalar<Scalar>(j.get<std::string>());
    if (j.is_number_integer()) {
      if constexpr (is_exact_v<Scalar>) {
        return j.is_number_unsigned() ? Scalar(j.get<std::uint64_t>()) : Scalar(j.get<std::int64_t>());
      } else {
        return static_cast<double>(j.get<std::int64_t>());
      }
    }
    if (j.is_number_float()) {
      if constexpr (is_exact_v<Scalar>) {
        throw DocumentError(path, "floating-point literal in a rational document (write it as a \"p/q\" string)");
      } else {
        return j.get<double>();
      }
    }
  } catch (const ParseError& e) {
    throw DocumentError(path, e.what());
  }
  throw DocumentError(path, "expected a number");
}

}  // namespace detail

template <typename Scalar>
nlohmann::json to_json(const BarrierSystem<Scalar>& system) {
  nlohmann::json doc;
  doc["mode"] = std::string(to_string(ScalarTraits<Scalar>::mode));
  doc["head_start"] = detail::scalar_to_json(system.head_start);
  doc["right"] = nlohmann::json::array();
  for (const auto& b : system.right) {
    doc["right"].push_back({{"a", detail::scalar_to_json(b.gap)}, {"b", detail::scalar_to_json(b.height)}});
  }
  doc["left"] = nlohmann::json::array();
  for (const auto& b : system.left) {
    doc["left"].push_back({{"c", detail::scalar_to_json(b.gap)}, {"d", detail::scalar_to_json(b.height)}});
  }
  return doc;
}

template <typename Scalar>
std::string save(const BarrierSystem<Scalar>& system) {
  return to_json(system).dump(2) + "\n";
}

NumericMode document_mode(const nlohmann::json& doc);

/// Reads a document of the given scalar's mode; a mode mismatch is an error.
template <typename Scalar>
BarrierSystem<Scalar> from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DocumentError("", "document must be a JSON object");
  if (document_mode(doc) != ScalarTraits<Scalar>::mode) {
    throw DocumentError("mode", "document is not in " + std::string(to_string(ScalarTraits<Scalar>::mode)) + " mode");
  }
  if (!doc.contains("head_start")) throw DocumentError("head_start", "missing required field");

  BarrierSystem<Scalar> out;
  out.head_start = detail::scalar_from_json<Scalar>(doc["head_start"], "head_start");
  const std::pair<Side, std::pair<const char*, const char*>> sides[] = {{Side::Right, {"a", "b"}},
                                                                        {Side::Left, {"c", "d"}}};
  for (const auto& [side, keys] : sides) {
    const std::string name(to_string(side));
    if (!doc.contains(name)) continue;  // absent list = no verticals
    const auto& list = doc[name];
    if (!list.is_array()) throw DocumentError(name, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = name + "[" + std::to_string(i) + "]";
      const auto& item = list[i];
      if (!item.is_object() || !item.contains(keys.first) || !item.contains(keys.second)) {
        throw DocumentError(at, std::string("expected {\"") + keys.first + "\", \"" + keys.second + "\"}");
      }
      out.side(side).push_back({detail::scalar_from_json<Scalar>(item[keys.first], at + "." + keys.first),
                                detail::scalar_from_json<Scalar>(item[keys.second], at + "." + keys.second)});
    }
  }
  return out;
}

AnySystem load(std::string_view text);

template <typename Scalar>
BarrierSystem<Scalar> load_as(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("", std::string("malformed JSON: ") + e.what());
  }
  return from_json<Scalar>(doc);
}

AnySystem load_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hpfire
