static int classify(int mode)
{
  int r ;
  r = 0;
  case 1:
    r = 10;
    break;
  case 2:
    r = 20;
    break;
  default:
    r = -1;
    break;
  return (r);
}

int main(void)
{
  return (classify(1));
}
