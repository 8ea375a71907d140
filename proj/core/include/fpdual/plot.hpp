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

#ifndef FPDUAL_PLOT_HPP_
#define FPDUAL_PLOT_HPP_

#include <string>
#include <vector>

namespace fpdual {

struct PlotOptions {
  int width = 760;
  int height = 480;
};

// Renders an experiment CSV (method,iter,metric,value) into one SVG per
// metric: log-scale metric against iteration, one polyline per method, the
// "bound" series dashed. Returns the files written. ParseError on schema
// mismatch or empty input.
std::vector<std::string> plot_csv(const std::string& csv_path,
                                  const std::string& out_dir,
                                  const PlotOptions& options = {});

}  // namespace fpdual

#endif  // FPDUAL_PLOT_HPP_
