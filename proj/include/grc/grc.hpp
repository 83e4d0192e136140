#pragma once

#include "grc/zn.hpp"
#include "grc/znmodule.hpp"
#include "grc/abelian.hpp"
#include "grc/graded.hpp"
#include "grc/functors.hpp"
#include "grc/canonical.hpp"
#include "grc/analyze.hpp"
#include "grc/corpus.hpp"
#include "grc/workspace.hpp"
#include "grc/report.hpp"
#include "grc/scenarios.hpp"
