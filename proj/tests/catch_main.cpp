// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.cpp>
