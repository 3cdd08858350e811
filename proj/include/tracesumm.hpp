/*
Copyright 2026 The tracesumm Authors

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

#pragma once

#include "tracesumm/error.hpp"
#include "tracesumm/parallel.hpp"
#include "tracesumm/trace_model.hpp"
#include "tracesumm/csv_log.hpp"
#include "tracesumm/jsonl.hpp"
#include "tracesumm/xes_log.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/edit_distance.hpp"
#include "tracesumm/topic_model.hpp"
#include "tracesumm/similarity_search.hpp"
#include "tracesumm/clustering.hpp"
#include "tracesumm/scheme.hpp"
#include "tracesumm/synthetic.hpp"
#include "tracesumm/bench.hpp"
