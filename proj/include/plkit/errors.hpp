// SPDX-License-Identifier: Apache-2.0
//
// plkit: CI/ABG path-loss model fitting and prediction toolkit
// Copyright (C) 2026 plkit contributors
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

namespace plkit
{

// Bad inputs: malformed files, out-of-domain arguments, violated
// preconditions. Maps to CLI exit code 2.
class validation_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Sample designs with no unique least-squares solution (rank-deficient or
// too small). Maps to CLI exit code 3.
class degenerate_fit_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class PartitionSide
{
    measurement,
    prediction
};

// A split produced an empty measurement or prediction set.
class empty_partition_error : public validation_error
{
  public:
    empty_partition_error(PartitionSide side, const std::string &what)
        : validation_error(what), side_(side)
    {
    }

    PartitionSide side() const { return side_; }

  private:
    PartitionSide side_;
};

// The brute-force grid argmin landed on a box edge; the caller must widen
// the box for the named parameter.
class grid_edge_error : public validation_error
{
  public:
    using validation_error::validation_error;
};

} // namespace plkit
