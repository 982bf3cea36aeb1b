// Copyright 2026 The mvcircuits Authors
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

#ifndef MVC_MVC_HPP
#define MVC_MVC_HPP

#include "mvc/operator_algebra.hpp"
#include "mvc/gate_families.hpp"
#include "mvc/channels.hpp"
#include "mvc/transfer.hpp"
#include "mvc/eigenbases.hpp"
#include "mvc/closed_forms.hpp"
#include "mvc/oracle.hpp"

#endif  // MVC_MVC_HPP
