// Copyright 2026 The cvforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef _CVFORGE_IO_H
#define _CVFORGE_IO_H

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "cvforge/gaussian.h"

namespace cvforge {

/// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double v);

/// Row-major CSV, one matrix row per line, 17 significant digits.
void write_covariance_csv(std::ostream &out, const RowMatrix &cov);

/// Binary dump: "CVCM", u32 version, u64 mode count M, then (2M)^2 f64, all little-endian.
inline constexpr uint32_t kCovarianceDumpVersion = 1;
void write_covariance_binary(std::ostream &out, const RowMatrix &cov);
RowMatrix read_covariance_binary(std::istream &in);

nlohmann::json mode_to_json(const ModeId &id);
ModeId mode_from_json(const nlohmann::json &j);
nlohmann::json registry_to_json(const ModeRegistry &registry);
ModeRegistry registry_from_json(const nlohmann::json &j);

/// Writes text to `path`, throwing std::runtime_error on I/O failure.
void write_text_file(const std::string &path, const std::string &text);
std::string read_text_file(const std::string &path);

}  // namespace cvforge

#endif
