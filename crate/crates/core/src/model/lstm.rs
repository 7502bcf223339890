use crate::error::Result;
use crate::model::ParamSet;
use crate::tensor::init::{uniform_fan_in, Prng};
use crate::tensor::{NodeId, Tape};

/// Parameter names for one LSTM layer with the given prefix.
pub(crate) fn lstm_param_names(prefix: &str) -> [String; 3] {
    [
        format!("{prefix}.w_ih"),
        format!("{prefix}.w_hh"),
        format!("{prefix}.bias"),
    ]
}

/// Gate layout along columns is `[input, forget, cell, output]`.
pub(crate) fn init_lstm(params: &mut ParamSet, prefix: &str, input: usize, hidden: usize, rng: &mut Prng) {
    let [w_ih, w_hh, bias] = lstm_param_names(prefix);
    params.push(w_ih, uniform_fan_in(rng, input, 4 * hidden, hidden));
    params.push(w_hh, uniform_fan_in(rng, hidden, 4 * hidden, hidden));
    params.push(bias, uniform_fan_in(rng, 1, 4 * hidden, hidden));
}

#[derive(Clone, Copy, Debug)]
pub struct LstmNodes {
    pub w_ih: NodeId,
    pub w_hh: NodeId,
    pub bias: NodeId,
    pub hidden: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct LstmState {
    pub h: NodeId,
    pub c: NodeId,
}

impl LstmNodes {
    pub fn step(&self, tape: &mut Tape, x: NodeId, state: LstmState) -> Result<LstmState> {
        let n = self.hidden;
        let xi = tape.matmul(x, self.w_ih)?;
        let hh = tape.matmul(state.h, self.w_hh)?;
        let pre = tape.add(xi, hh)?;
        let gates = tape.add(pre, self.bias)?;

        let i = tape.slice_cols(gates, 0, n)?;
        let f = tape.slice_cols(gates, n, n)?;
        let g = tape.slice_cols(gates, 2 * n, n)?;
        let o = tape.slice_cols(gates, 3 * n, n)?;
        let i = tape.sigmoid(i)?;
        let f = tape.sigmoid(f)?;
        let g = tape.tanh(g)?;
        let o = tape.sigmoid(o)?;

        let keep = tape.mul(f, state.c)?;
        let write = tape.mul(i, g)?;
        let c = tape.add(keep, write)?;
        let squashed = tape.tanh(c)?;
        let h = tape.mul(o, squashed)?;
        Ok(LstmState { h, c })
    }
}
