// SPDX-License-Identifier: Apache-2.0
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

#include <stdexcept>
#include <string>

namespace semiq {

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or quadrature hit its iteration cap before reaching the
/// requested tolerance. Carries the error bound that was achieved.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error)
    {
    }

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// The request is valid but belongs to a different entry point
/// (e.g. the m = 0 integral family).
class DispatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool ok, const char* what)
{
    if (!ok) throw DomainError(what);
}

} // namespace detail
} // namespace semiq
