#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nls/rational.hpp"

namespace nls {

/// Flat "key = value" configuration with [section] headers; a header turns
/// following keys into "section.key". '#' starts a comment. CLI overrides
/// arrive through set() with fully qualified keys.
class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int_or(const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  Rational get_rational(const std::string& key) const;
  /// Comma-separated list of doubles.
  std::vector<double> get_double_list(const std::string& key) const;

  /// Canonical sorted "key = value" text; the basis of the run id.
  std::string echo() const;

 private:
  std::optional<std::string> find(const std::string& key) const;
  std::map<std::string, std::string> entries_;
};

}  // namespace nls
