// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The backhaul authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "backhaul/csv.hpp"

#include <charconv>
#include <cmath>

namespace backhaul {

void CsvWriter::header(std::initializer_list<std::string_view> names)
{
    bool first = true;
    for (auto n : names) {
        if (!first)
            out_ << ',';
        first = false;
        out_ << n;
    }
    out_ << '\n';
}

void CsvWriter::write_double(double v)
{
    if (std::isnan(v)) {
        out_ << "nan";
        return;
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out_.write(buf, ptr - buf);
}

} // namespace backhaul
