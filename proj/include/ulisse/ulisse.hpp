/*
 * Copyright 2026 The ULISSE Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ULISSE_ULISSE_HPP
#define ULISSE_ULISSE_HPP

#include "ulisse/bounds.hpp"
#include "ulisse/distance.hpp"
#include "ulisse/errors.hpp"
#include "ulisse/index.hpp"
#include "ulisse/oracle.hpp"
#include "ulisse/query.hpp"
#include "ulisse/scorer.hpp"
#include "ulisse/series.hpp"
#include "ulisse/summarization.hpp"

#endif  // ULISSE_ULISSE_HPP
