/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seqcflp/generator.hpp"
#include "seqcflp/model.hpp"

namespace seqcflp {

/// Malformed instance document. `path()` is a JSON path such as
/// "$.customers[2].w[0]".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct InstanceFile {
  Instance instance;
  std::optional<Geometry> geometry;
};

inline constexpr int kInstanceFormatVersion = 1;

/// {version, p, r, customers: [{h, uL, uF, w: [...]}],
///  geometry?: {beta, alpha, customer_xy, site_xy, seed, square_side}}
InstanceFile parse_instance(std::string_view text);
InstanceFile read_instance(const std::filesystem::path& path);

/// Canonical form: fixed key order, shortest round-trip floats.
std::string dump_instance(const Instance& inst, const Geometry* geometry = nullptr);
void write_instance(const std::filesystem::path& path, const Instance& inst,
                    const Geometry* geometry = nullptr);

}  // namespace seqcflp
