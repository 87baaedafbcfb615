#pragma once

#include "asymcap/capacity.hpp"
#include "asymcap/catalog.hpp"
#include "asymcap/decompose.hpp"
#include "asymcap/errors.hpp"
#include "asymcap/group.hpp"
#include "asymcap/oneshot.hpp"
#include "asymcap/representation.hpp"
#include "asymcap/states.hpp"
#include "asymcap/types.hpp"
