// Copyright 2026 The SiteQA Authors.
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

#pragma once

#include "siteqa/combiner.hpp"
#include "siteqa/config.hpp"
#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/kgstore.hpp"
#include "siteqa/linker.hpp"
#include "siteqa/porter.hpp"
#include "siteqa/querygen.hpp"
#include "siteqa/ranker.hpp"
#include "siteqa/reader.hpp"
#include "siteqa/remote_reader.hpp"
#include "siteqa/retriever.hpp"
#include "siteqa/service.hpp"
#include "siteqa/tokenizer.hpp"
#include "siteqa/url.hpp"
