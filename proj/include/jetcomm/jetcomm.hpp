#pragma once

#include "jetcomm/commutant.hpp"
#include "jetcomm/errors.hpp"
#include "jetcomm/field.hpp"
#include "jetcomm/irr3path.hpp"
#include "jetcomm/jetideal.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/parallel.hpp"
#include "jetcomm/random.hpp"
#include "jetcomm/redwitness.hpp"
#include "jetcomm/sampling.hpp"
#include "jetcomm/symcalc.hpp"
#include "jetcomm/textio.hpp"
#include "jetcomm/truncmat.hpp"
#include "jetcomm/unipoly.hpp"
