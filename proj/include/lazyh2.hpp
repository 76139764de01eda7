#pragma once

#include "lazyh2/core.hpp"
#include "lazyh2/cyclo.hpp"
#include "lazyh2/groups.hpp"
#include "lazyh2/fixtures.hpp"
#include "lazyh2/pontryagin.hpp"
#include "lazyh2/linalg.hpp"
#include "lazyh2/hopf.hpp"
#include "lazyh2/lazy.hpp"
#include "lazyh2/io.hpp"
