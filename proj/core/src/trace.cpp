// Copyright 2026 The fpdual Authors
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

#include "fpdual/trace.hpp"

#include <charconv>
#include <cstdio>
#include <string>

namespace fpdual {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << "iter,metric,value\n";
  for (const auto& [name, series] : trace.metrics) {
    for (size_t i = 0; i < series.iters.size(); ++i) {
      out << series.iters[i] << "," << name << ","
          << format_double(series.values[i]) << "\n";
    }
  }
}

}  // namespace fpdual
