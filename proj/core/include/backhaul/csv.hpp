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

#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

namespace backhaul {

// Minimal comma-separated writer. Floating-point cells are written with
// round-trip precision; strings are written verbatim (no quoting needed for
// the identifiers this project emits).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<std::string_view> names);

    template <class... Ts> void row(const Ts&... cells)
    {
        bool first = true;
        (cell(cells, first), ...);
        out_ << '\n';
    }

private:
    template <class T> void cell(const T& v, bool& first)
    {
        if (!first)
            out_ << ',';
        first = false;
        if constexpr (std::is_floating_point_v<T>)
            write_double(static_cast<double>(v));
        else if constexpr (std::is_same_v<T, bool>)
            out_ << (v ? 1 : 0);
        else
            out_ << v;
    }

    void write_double(double v);

    std::ostream& out_;
};

} // namespace backhaul
