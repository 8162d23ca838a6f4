/*
   Copyright 2026 The hermite-forge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HFORGE_HPP
#define HFORGE_HPP

#include "hforge/analysis.hpp"
#include "hforge/construct.hpp"
#include "hforge/error.hpp"
#include "hforge/factor.hpp"
#include "hforge/grid.hpp"
#include "hforge/identities.hpp"
#include "hforge/io.hpp"
#include "hforge/laurent.hpp"
#include "hforge/laurent_matrix.hpp"
#include "hforge/linalg.hpp"
#include "hforge/poly.hpp"
#include "hforge/rational.hpp"
#include "hforge/splines.hpp"
#include "hforge/subdivision.hpp"
#include "hforge/taylor.hpp"

#endif // HFORGE_HPP
