"""Predictive surrogates for pulsed impinging-jet heat transfer.

POD model reduction, FFT-signature MLP regression, LSTM/Transformer
forecasting and POD-LSTM field reconstruction on an analytic stand-in
for the CFD full-order model.
"""

__version__ = "0.1.0"
