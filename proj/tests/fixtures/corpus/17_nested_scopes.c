void nested(double *m, int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    if (rows > 1) {
      #pragma acc loop vector
      for (int c = 0; c < cols; ++c) {
        m[r * cols + c] += 1.0;
      }
    }
  }
}

#pragma acc routine seq
