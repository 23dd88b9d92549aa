// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FHBENCH_VERSION_HPP
#define FHBENCH_VERSION_HPP

#define FHBENCH_VERSION_MAJOR 0
#define FHBENCH_VERSION_MINOR 1
#define FHBENCH_VERSION_PATCH 0

namespace fhbench {

inline const char* version_string() { return "0.1.0"; }

/// Schema tag written into every report and cache file header.
inline const char* report_schema() { return "fhbench-report v1"; }
inline const char* spectrum_schema() { return "fhbench-spectrum v1"; }

}  // namespace fhbench

#endif  // FHBENCH_VERSION_HPP
